//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use qtorsor::cli::{parse_spec, run, RunOptions, CACHE_DIR_ENV};
use qtorsor::constructions::*;
use qtorsor::engine::{bruteforce_dimension, Presentation};
use qtorsor::maps::{Certificate, Handle, Orientation, Outcome, Signature, TensorElement};
use qtorsor::verifier::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ctx() -> BuildContext {
    BuildContext::new(8)
}

fn data() -> [CartanDatum; 3] {
    [CartanDatum::a1(), CartanDatum::a1xa1(), CartanDatum::a2()]
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn all_pass(report: &CheckReport) -> Result<usize, String> {
    match report
        .results
        .iter()
        .find(|r| r.status != CheckStatus::Pass)
    {
        None => Ok(report.results.len()),
        Some(r) => Err(format!(
            "{} / {}: {} is {} {:?} {:?}",
            report.suite, report.datum, r.label, r.status, r.witness, r.note
        )),
    }
}

fn torsor_suite() -> Check {
    let mut n = 0;
    for c in data() {
        let tor = kashiwara_torsor(&ctx(), &c).map_err(e)?;
        n += all_pass(&check_torsor(&tor, &VerifyOptions::default()).map_err(e)?)?;
        let serre = tor
            .algebra
            .presentation()
            .relations()
            .iter()
            .filter(|r| r.label.starts_with("serre"))
            .count();
        if c == CartanDatum::a2() && serre == 0 {
            return Err("A2 presentation has no Serre relations".into());
        }
    }
    Ok(format!(
        "{n} torsor checks on A1, A1xA1, A2 pass with certainty"
    ))
}

fn hopf_suites() -> Check {
    let mut n = 0;
    for c in data() {
        for h in [
            build_uq(&ctx(), &c),
            build_uhat(&ctx(), &c),
            build_uprime(&ctx(), &c),
        ] {
            n += all_pass(&check_hopf(&h.map_err(e)?, &VerifyOptions::default()).map_err(e)?)?;
        }
    }
    Ok(format!("{n} Hopf checks on U_q, Û, U′ for three data"))
}

fn galois_suite() -> Check {
    let mut n = 0;
    for c in data() {
        let b = kashiwara_bundle(&ctx(), &c).map_err(e)?;
        for (role, m) in b.maps() {
            if *m.certificate() != Certificate::Verified {
                return Err(format!("{} {role}: {:?}", c.label(), m.certificate()));
            }
        }
        n += all_pass(&check_galois_system(&b, &VerifyOptions::default()).map_err(e)?)?;
        n += all_pass(&check_complete_system(&b, &VerifyOptions::default()).map_err(e)?)?;
    }
    Ok(format!(
        "{n} certificate, system, mirrored-system and compatibility checks"
    ))
}

fn embedding() -> Check {
    let mut n = 0;
    for c in data() {
        let (iota, uh, u) = embed_uhat(&ctx(), &c).map_err(e)?;
        n += all_pass(&check_embedding(&iota, &uh, &u, &VerifyOptions::default()).map_err(e)?)?;
    }
    Ok(format!("{n} algebra and coalgebra checks of Û -> U"))
}

fn sridharan() -> Check {
    let mut n = 0;
    for (lie, c) in [weyl_datum(), heisenberg_datum()] {
        let b = sridharan_bundle(&ctx(), &lie, &c).map_err(e)?;
        let tor = b.torsor.as_ref().ok_or("no torsor")?;
        n += all_pass(&check_torsor(tor, &VerifyOptions::default()).map_err(e)?)?;
        n += all_pass(&check_galois_system(&b, &VerifyOptions::default()).map_err(e)?)?;
        n += all_pass(&check_complete_system(&b, &VerifyOptions::default()).map_err(e)?)?;
        let gens = tor.algebra.presentation().generators();
        for (g, (th, s)) in gens
            .iter()
            .zip(tor.theta.images().iter().zip(b.s_t.images()))
        {
            let x = Signature::single(&tor.algebra).parse(&g.name).map_err(e)?;
            if *th != x {
                return Err(format!("θ({}) is not {}", g.name, g.name));
            }
            let minus = b.s_t.target().parse(&format!("-{}", g.name)).map_err(e)?;
            if *s != minus {
                return Err(format!("S({}) is not -{}", g.name, g.name));
            }
        }
    }
    Ok(format!(
        "{n} checks on Weyl and Heisenberg, θ = Id and S = -Id"
    ))
}

fn membership() -> Check {
    let b = kashiwara_bundle(&ctx(), &CartanDatum::a1()).map_err(e)?;
    let n = all_pass(&check_membership(&b, &VerifyOptions::default()).map_err(e)?)?;
    let tor = b.torsor.as_ref().ok_or("no torsor")?;
    let sig = |o: &[Orientation]| {
        Signature::new(o.iter().map(|&x| tor.algebra.with_orientation(x)).collect())
    };
    use Orientation::{Opposite as Op, Straight as St};
    let parse = |s: &Signature, t: &str| -> Result<TensorElement, String> { s.parse(t).map_err(e) };
    let negatives = [
        check_hl_membership(tor, "ep1⊗1", &parse(&sig(&[St, Op]), "(ep1)⊗(1)")?).map_err(e)?,
        check_hr_membership(tor, "1⊗ep1", &parse(&sig(&[Op, St]), "(1)⊗(ep1)")?).map_err(e)?,
        check_z_membership(
            tor,
            "ep1⊗1⊗1",
            &parse(&sig(&[Op, St, Op]), "(ep1)⊗(1)⊗(1)")?,
        )
        .map_err(e)?,
    ];
    for r in &negatives {
        if r.status != CheckStatus::Fail || r.witness.is_none() {
            return Err(format!("{} was {} without a witness", r.label, r.status));
        }
    }
    Ok(format!(
        "{n} membership checks pass, 3 negative examples fail with witnesses"
    ))
}

fn classical() -> Check {
    for c in [CartanDatum::a1(), CartanDatum::a2()] {
        let (lie, coc) = nilpotent_pair_datum(&c).map_err(e)?;
        let cl = classical_limit(&kashiwara_presentation(&c), None).map_err(e)?;
        match check_sridharan_match(&ctx(), &cl, &lie, &coc).map_err(e)? {
            Outcome::Equal => {}
            o => return Err(format!("{}: B_q limit {o:?}", c.label())),
        }
        let (up, uh) = unified_limits(&c).map_err(e)?;
        match mutually_reduce(&BuildContext::new(6), &up, &uh).map_err(e)? {
            Outcome::Equal => {}
            o => return Err(format!("{}: U′/Û limits {o:?}", c.label())),
        }
    }
    Ok("B_q limits match U_c(n⁺⊕n⁻); U′ and Û limits coincide for A1 and A2".into())
}

fn oracle_dims(h: &Handle, max: u32) -> Result<Vec<usize>, String> {
    let p: &Presentation = h.presentation();
    let mut dims = Vec::new();
    for d in 0..=max {
        let engine = h.system().graded_dimension(d).map_err(e)?;
        let oracle = bruteforce_dimension(p, d).map_err(e)?;
        if engine != oracle {
            return Err(format!(
                "{} degree {d}: engine {engine}, oracle {oracle}",
                p.name()
            ));
        }
        dims.push(engine);
    }
    Ok(dims)
}

fn oracle() -> Check {
    let ctx = ctx();
    let mut count = 0;
    let mut uq_a1 = Vec::new();
    for (c, max) in [
        (CartanDatum::a1(), 4),
        (CartanDatum::a1xa1(), 3),
        (CartanDatum::a2(), 3),
    ] {
        let hs = [
            build_uq(&ctx, &c).map_err(e)?.algebra,
            build_uhat(&ctx, &c).map_err(e)?.algebra,
            build_uprime(&ctx, &c).map_err(e)?.algebra,
            build_kashiwara(&ctx, &c).map_err(e)?,
        ];
        for (i, h) in hs.iter().enumerate() {
            let dims = oracle_dims(h, max)?;
            if i == 0 && c == CartanDatum::a1() {
                uq_a1 = dims;
            }
            count += 1;
        }
    }
    for (lie, c) in [weyl_datum(), heisenberg_datum()] {
        oracle_dims(&build_sridharan(&ctx, &lie, &c).map_err(e)?, 4)?;
        oracle_dims(&build_enveloping(&ctx, &lie).map_err(e)?.algebra, 4)?;
        count += 2;
    }
    if uq_a1.get(2) != Some(&14) {
        return Err(format!(
            "U_q(sl2) dimensions {uq_a1:?}, expected 14 at degree ≤ 2"
        ));
    }
    Ok(format!(
        "{count} algebras agree with the oracle; U_q(sl2) has 14 words of degree ≤ 2"
    ))
}

fn mutations() -> Check {
    let ctx = ctx();
    let mut bundles = Vec::new();
    for c in data() {
        bundles.push(kashiwara_bundle(&ctx, &c).map_err(e)?);
    }
    for (lie, c) in [weyl_datum(), heisenberg_datum()] {
        bundles.push(sridharan_bundle(&ctx, &lie, &c).map_err(e)?);
    }
    let mut total = 0;
    for (k, b) in bundles.iter().enumerate() {
        let outcomes = run_mutations(b, DEFAULT_MUTATIONS, 1000 + k as u64).map_err(e)?;
        if outcomes.len() != DEFAULT_MUTATIONS {
            return Err(format!(
                "{}: only {} effective mutations",
                b.name,
                outcomes.len()
            ));
        }
        if let Some(o) = outcomes.iter().find(|o| !o.detected()) {
            return Err(format!("{}: {} survived", b.name, o.mutation));
        }
        total += outcomes.len();
    }
    Ok(format!(
        "{total} mutations over {} bundles, each detected",
        bundles.len()
    ))
}

fn determinism_and_exit_codes() -> Check {
    let suites = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../suites");
    let no_cache = RunOptions {
        no_cache: true,
        ..RunOptions::default()
    };
    for f in [
        "kashiwara_a1.json",
        "sridharan_heisenberg.json",
        "kashiwara_a1_theta_identity.json",
    ] {
        let spec = parse_spec(&suites.join(f)).map_err(e)?;
        let a = run(&spec, &no_cache).map_err(e)?.without_timing().to_json();
        let b = run(&spec, &no_cache).map_err(e)?.without_timing().to_json();
        if a != b {
            return Err(format!("{f}: reports differ between runs"));
        }
    }
    let matrix = [
        ("kashiwara_a1.json", 0),
        ("kashiwara_a2.json", 0),
        ("uq_hopf_a2.json", 0),
        ("sridharan_weyl.json", 0),
        ("kashiwara_a1_theta_identity.json", 1),
        ("kashiwara_a2_bound2.json", 2),
        ("budget_a2.json", 3),
        ("bad_cocycle.json", 4),
    ];
    for (f, want) in matrix {
        let status = Command::new(env!("CARGO_BIN_EXE_qtorsor"))
            .args([
                "run",
                suites.join(f).to_str().unwrap_or_default(),
                "--no-cache",
            ])
            .env_remove(CACHE_DIR_ENV)
            .output()
            .map_err(e)?
            .status
            .code();
        if status != Some(want) {
            return Err(format!("{f}: exit {status:?}, expected {want}"));
        }
    }
    Ok(format!(
        "reports byte-identical modulo timing; {} exit codes as specified",
        matrix.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("torsor suite on B_q", torsor_suite),
        ("Hopf suites", hopf_suites),
        ("Galois and complete system", galois_suite),
        ("Û -> U embedding", embedding),
        ("Sridharan suites", sridharan),
        ("membership suite", membership),
        ("classical limit", classical),
        ("engine/oracle equivalence", oracle),
        ("mutation sensitivity", mutations),
        ("determinism and exit codes", determinism_and_exit_codes),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] {:>2} {name}: {detail} ({:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
