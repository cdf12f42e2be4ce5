//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use qconv::grs::{self, GrsFamilyParams, GrsSetup};
use qconv::polymat::{FreeDistanceOptions, TriState};
use qconv::report::{self, Status, VerifyOptions};
use qconv::rm::{self, RmFamilyParams};
use qconv::stabilizer::{
    assemble, certificate_error, commutes, singleton_bound, Detector, PauliVec, QuantumConvCode, QuantumOptions,
    TraceAltContext,
};
use qconv::{Budget, ExtensionPair};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {} ms, limit {} ms", took.as_millis(), limit.as_millis()));
    }
    Ok(())
}

fn grs_code(q: u32, n: usize, t: usize) -> QuantumConvCode {
    let setup = GrsSetup::new(GrsFamilyParams::new(q, n, t).unwrap()).unwrap();
    grs::quantum_code(&setup, &QuantumOptions::default()).unwrap()
}

fn all_codes() -> Vec<QuantumConvCode> {
    let opts = QuantumOptions::default();
    let mut codes: Vec<QuantumConvCode> = grs::enumerate_family(8)
        .into_iter()
        .map(|p| grs::quantum_code(&GrsSetup::new(p).unwrap(), &opts).unwrap())
        .collect();
    codes.extend(rm::enumerate_family(5).iter().map(|p| rm::quantum_code(p, &opts).unwrap()));
    codes
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let code = grs_code(4, 15, 1);
    let (n, mu) = (15usize, 2usize);
    let formula = format!("[({n}, {}, {n}; {}, {})]_4", n - mu, mu / 2, mu + 1);
    ensure!(code.label() == "[(15, 13, 15; 1, 3)]_4", "got {}", code.label());
    ensure!(code.label() == formula, "{} differs from {formula}", code.label());
    ensure!(code.pure == TriState::Yes, "purity {:?}", code.pure);
    ensure!(code.optimal, "not optimal");
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} pure optimal", code.label()))
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let members = grs::enumerate_family(8);
    let mut products = 0;
    let mut witnesses = 0;
    for p in &members {
        let r = grs::verify_row_products(p.q, p.n, p.mu()).map_err(|e| e.to_string())?;
        ensure!(r.holds, "{p}: nonzero in-range product");
        ensure!(r.products.iter().all(|x| x.value == 0), "{p}: nonzero product listed");
        products += r.products.len();
        let w = grs::row_product_range_witness(&GrsSetup::new(*p).unwrap());
        if w.value != 0 {
            witnesses += 1;
        }
    }
    ensure!(witnesses >= 1, "no out-of-range witness");
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} members, {products} products zero, {witnesses} out-of-range witnesses", members.len()))
}

fn ac3() -> Outcome {
    let mut lines = Vec::new();
    for p in grs::enumerate_family(8) {
        let start = Instant::now();
        let small = (p.q, p.n, p.t) == (4, 15, 1);
        let cap = if small { Duration::from_secs(10) } else { Duration::from_secs(600) };
        let budget = Budget::default().with_time_cap(cap);
        let free = FreeDistanceOptions { budget, ..FreeDistanceOptions::default() };
        let r = grs::verify_distances(&GrsSetup::new(p).unwrap(), &free, &budget).map_err(|e| e.to_string())?;
        ensure!(r.dual.exact && r.dual.df_lower == 2 * p.t + 1, "{p}: dual [{}, {}]", r.dual.df_lower, r.dual.df_upper);
        let target = p.n - 2 * p.t + 1;
        ensure!(r.hstar_lower <= target, "{p}: H* lower bound {} exceeds {target}", r.hstar_lower);
        ensure!(r.hstar_upper.is_none_or(|u| u >= target), "{p}: H* upper bound below {target}");
        if small {
            ensure!(r.hstar_exact() == Some(14), "(4,15,1): H* weight {:?}", r.hstar_exact());
        }
        let status = if r.hstar_exact() == Some(target) { "exact" } else { "bounded" };
        within(start, cap)?;
        lines.push(format!("{p}: dual {}, H* {target} {status}", r.dual.df_lower));
    }
    Ok(lines.join("; "))
}

fn ac4() -> Outcome {
    for p in grs::enumerate_family(8) {
        let b = singleton_bound(p.n, p.n - 2 * p.t, p.t).map_err(|e| e.to_string())?;
        ensure!(b == 2 * p.t + 1, "{p}: bound {b}");
    }
    let codes = all_codes();
    for c in &codes {
        ensure!(c.within_singleton(), "{}: df_upper {:?} > {}", c.label(), c.df.upper, c.singleton_bound);
        ensure!(c.df.upper.is_some(), "{}: no upper bound", c.label());
    }
    Ok(format!("zero slack for every GRS member; {} codes within the bound", codes.len()))
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let p = RmFamilyParams::new(5, 1, 1).unwrap();
    let code = rm::quantum_code(&p, &QuantumOptions::default()).map_err(|e| e.to_string())?;
    ensure!((code.n, code.k, code.delta) == (16, 6, 0), "got {}", code.label());
    ensure!(code.df.value() == Some(4), "df {:?}", code.df);
    ensure!(code.pure == TriState::Yes, "purity {:?}", code.pure);
    let dual = rm::dual_free_distance(&p, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(dual.dual.value() == Some(4), "dual [{}, {}]", dual.dual.df_lower, dual.dual.df_upper);
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} pure, dual distance 4", code.label()))
}

fn ac6() -> Outcome {
    let start = Instant::now();
    let ctx = TraceAltContext::new(&ExtensionPair::with_order(2).unwrap());
    let mut pairs = 0;
    for n in 1..=3 {
        let all = common::all_paulis(2, n);
        for (a, b) in &all {
            for (a2, b2) in &all {
                let lib = commutes(&PauliVec::new(a.clone(), b.clone()), &PauliVec::new(a2.clone(), b2.clone()), &ctx);
                let oracle = common::qubit_commute((a, b), (a2, b2));
                ensure!(lib == oracle, "{a:?}|{b:?} vs {a2:?}|{b2:?}: library {lib}, matrices {oracle}");
                pairs += 1;
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{pairs} pairs agree (64 x 64 on 3 qubits)"))
}

fn ac7() -> Outcome {
    let codes = all_codes();
    let mut windows = 0;
    for c in &codes {
        let src = c.source().unwrap();
        for t in 0..=3 {
            let w = assemble(&src.lifted, t, &src.ctx).map_err(|e| e.to_string())?;
            let k = w.checks();
            ensure!(k.all(), "{} t={t}: s1={} s2={} s3={}", c.label(), k.s1, k.s2, k.s3);
            windows += 1;
        }
    }
    Ok(format!("{windows} windows over {} codes", codes.len()))
}

fn ac8() -> Outcome {
    let start = Instant::now();
    let code = grs_code(4, 15, 1);
    let src = code.source().unwrap();
    let det = Detector::new(&code, 1).map_err(|e| e.to_string())?;
    let len = det.qudits();
    ensure!(len == 45, "window has {len} qudits");
    let ext = src.pair.ext();
    let mut scanned = 0u64;
    // weight 1, every single-qudit error
    for pos in 0..len {
        for x in 0..4 {
            for z in 0..4 {
                if x == 0 && z == 0 {
                    continue;
                }
                let e = PauliVec::single(len, pos, x, z);
                ensure!(det.is_detectable(&e).map_err(|e| e.to_string())?, "weight-1 error at {pos} ({x}, {z})");
                scanned += 1;
            }
        }
    }
    // weight 2, first symbol of tau(e) scaled to 1
    let mut v = vec![0u32; len];
    for i in 0..len {
        for j in i + 1..len {
            for s in ext.nonzero_elements() {
                v[i] = 1;
                v[j] = s;
                ensure!(det.detects_image(&v), "weight-2 image at ({i}, {j}) with {s}");
                scanned += 1;
            }
            v[i] = 0;
            v[j] = 0;
        }
    }
    // the normalization is sound: scaling never changes the verdict
    for lambda in ext.nonzero_elements() {
        let mut w = vec![0u32; len];
        w[3] = lambda;
        w[17] = ext.mul(lambda, 5);
        let mut u = vec![0u32; len];
        u[3] = 1;
        u[17] = 5;
        ensure!(det.detects_image(&w) == det.detects_image(&u), "scaling by {lambda} changed the verdict");
    }
    let cert = certificate_error(&code).map_err(|e| e.to_string())?.ok_or("no certificate")?;
    ensure!(cert.weight() == 3, "certificate weight {}", cert.weight());
    ensure!(!det.is_detectable(&cert).map_err(|e| e.to_string())?, "certificate reported detectable");
    within(start, Duration::from_secs(300))?;
    Ok(format!("{scanned} errors of weight <= 2 detectable; weight-3 certificate undetectable"))
}

fn ac9() -> Outcome {
    let bad = RmFamilyParams::unchecked(3, 1, 1).unwrap();
    let r = rm::verify_self_orthogonal(&bad).map_err(|e| e.to_string())?;
    let w = r.witness.ok_or("(3,1,1): no witness")?;
    ensure!(!r.holds(), "(3,1,1) reported self-orthogonal");

    let o = Command::new(env!("CARGO_BIN_EXE_qconv")).args(["rm", "--member", "3,1,1"]).output().unwrap();
    ensure!(o.status.code() == Some(1), "rm --member 3,1,1 exited {:?}", o.status.code());
    ensure!(String::from_utf8_lossy(&o.stdout).contains("witness (row"), "no witness in CLI output");

    let code = grs_code(4, 15, 1);
    let mut v = serde_json::to_value(&code).unwrap();
    let entry = &mut v["generator"]["entries"][0][0][0];
    *entry = if *entry == serde_json::json!([0, 1, 0, 0]) { serde_json::json!(1) } else { serde_json::json!(2) };
    let mutated = report::load_descriptors(&v.to_string()).map_err(|e| e.to_string())?;
    let out = report::verify_descriptor(&mutated[0], &VerifyOptions::default());
    let claim = out.report.claim("code.self-orthogonal").ok_or("missing claim")?;
    ensure!(claim.status == Status::Fail, "mutated GRS passed");
    ensure!(claim.details.contains("witness (row"), "mutated GRS: {}", claim.details);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mutated.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qconv")).arg("verify").arg(&path).output().unwrap();
    ensure!(o.status.code() == Some(1), "verify of the mutated descriptor exited {:?}", o.status.code());
    Ok(format!("RM (3,1,1) witness {w}; mutated GRS {}", claim.details))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC-1 GRS family correctness", ac1),
        ("AC-2 Hermitian row products", ac2),
        ("AC-3 GRS distances", ac3),
        ("AC-4 Singleton bound attainment", ac4),
        ("AC-5 RM family correctness", ac5),
        ("AC-6 commutation oracle equivalence", ac6),
        ("AC-7 S1-S3 window checks", ac7),
        ("AC-8 detectability semantics", ac8),
        ("AC-9 negative controls", ac9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({ms} ms): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name} ({ms} ms): {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
