//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Every expected value here is either derived from an
//! independent oracle (generating functions, hand-evaluated formulas) or
//! pinned from a decisive run of the scan oracle.

use std::collections::BTreeMap;
use std::process::Command;

use scca::algebra::Gen;
use scca::analysis::{
    gram_matrix, simplicity_scan, verify_algebra, verify_freefield, verify_primed,
    whittaker_phi_prime, whittaker_simplicity, SimplicityMethod, SimplicityVerdict,
};
use scca::halfint::HalfInt;
use scca::modules::freefield::{act_prime, PrimeOp};
use scca::modules::{
    build_module, build_module_with_budget, vector_text, ActionTable, GradedVector, ModuleParams,
    ModuleSpec, WhittakerData,
};
use scca::pbw::PBWMonomial;
use scca::rat::{rat, rat_int, rat_zero, Rat};

fn report(name: &str, pass: bool) {
    println!(
        "acceptance {:<28} {}",
        name,
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {name} failed");
}

fn params_r(c: Rat, z: Rat, ell: Rat, d: Rat, h: Rat) -> ModuleParams {
    ModuleParams::new(c, z, ell, d, h)
}

#[test]
fn criterion_01_algebra_axioms() {
    let reports = verify_algebra(HalfInt::from_int(6));
    let pass = reports.iter().all(|r| r.pass && r.failures == 0);
    for r in &reports {
        assert!(r.checked > 0, "{} checked nothing", r.id);
    }
    report("1-algebra-axioms", pass);
}

#[test]
fn criterion_02_freefield() {
    let cases: [(Rat, Rat, Rat, Rat); 3] = [
        (rat_int(1), rat_int(0), rat_int(0), rat(3, 2)),
        (rat_int(2), rat_int(1), rat_int(3), rat(-9, 2)),
        (rat_int(-3), rat(1, 2), rat_int(1), rat(5, 2)),
    ];
    let mut pass = true;
    for (ell, z, d, c1) in cases {
        let p = params_r(rat_zero(), z, ell, d, rat_zero());
        let reports = verify_freefield(&p, HalfInt::from_int(4)).unwrap();
        pass &= reports.iter().all(|r| r.pass);
        // the bound central scalar matches the closed formula
        let handle = build_module(ModuleSpec::Fock(p), HalfInt::from_int(1)).unwrap();
        pass &= scca::modules::act::central_scalar(&handle, Gen::C1) == c1;
    }
    report("2-freefield-realization", pass);
}

#[test]
fn criterion_03_primed_decoupling() {
    let verma = build_module(
        ModuleSpec::Verma(params_r(
            rat_int(2),
            rat_int(1),
            rat_int(1),
            rat_int(3),
            rat_int(0),
        )),
        HalfInt::from_int(3),
    )
    .unwrap();
    let whit = build_module_with_budget(
        ModuleSpec::Whittaker(WhittakerData {
            m: 1,
            l_values: BTreeMap::from([(1, rat_int(5)), (2, rat_int(7))]),
            h_values: BTreeMap::from([(0, rat_int(2)), (1, rat_int(3))]),
            c: rat_int(0),
            z: rat_int(1),
            ell: rat_int(1),
        }),
        HalfInt::from_int(3),
        6,
    )
    .unwrap();
    let mut pass = true;
    for handle in [&verma, &whit] {
        let reports = verify_primed(handle, HalfInt::from_int(2));
        pass &= reports.iter().all(|r| r.pass);
    }
    report("3-primed-decoupling", pass);
}

#[test]
fn criterion_04_graded_dims() {
    let verma = build_module(
        ModuleSpec::Verma(params_r(
            rat_int(0),
            rat_int(0),
            rat_int(1),
            rat_int(0),
            rat_int(0),
        )),
        HalfInt::from_int(2),
    )
    .unwrap();
    let fock = build_module(
        ModuleSpec::Fock(params_r(
            rat_int(0),
            rat_int(0),
            rat_int(1),
            rat_int(0),
            rat_int(0),
        )),
        HalfInt::from_int(2),
    )
    .unwrap();
    // degrees 0, 1/2, ..., 2 against the partition-product oracles
    let verma_expect = [1usize, 2, 3, 6, 11];
    let fock_expect = [1usize, 1, 1, 2, 3];
    let mut pass = true;
    for t in 0..=4i64 {
        let d = HalfInt::from_twice(t);
        pass &= verma.graded_dim(d).unwrap() == verma_expect[t as usize];
        pass &= fock.graded_dim(d).unwrap() == fock_expect[t as usize];
    }
    report("4-graded-dimensions", pass);
}

#[test]
fn criterion_05_verma_level_zero() {
    // regular point of the level-zero simplicity criterion: d + (n+1)z != 0
    // for every nonzero integer n (d/z is not an integer)
    let regular = build_module(
        ModuleSpec::Verma(params_r(
            rat_int(0),
            rat_int(2),
            rat_int(0),
            rat_int(1),
            rat_int(0),
        )),
        HalfInt::from_int(3),
    )
    .unwrap();
    let mut pass = true;
    let mut t = 1;
    while t <= 6 {
        let gm = gram_matrix(&regular, HalfInt::from_twice(t)).unwrap();
        pass &= gm.rank() == gm.dim();
        t += 1;
    }
    // degenerate point: d + (n+1)z = 0 at n = -3
    let degen = build_module(
        ModuleSpec::Verma(params_r(
            rat_int(0),
            rat_int(1),
            rat_int(0),
            rat_int(-2),
            rat_int(0),
        )),
        HalfInt::from_int(3),
    )
    .unwrap();
    match simplicity_scan(&degen, HalfInt::from_int(3), 6).unwrap() {
        SimplicityVerdict::ObstructionAt { degree, witness } => {
            pass &= degree == HalfInt::from_twice(1);
            pass &= vector_text(&degen, &witness) == "1*F(-1/2) v0";
        }
        _ => pass = false,
    }
    report("5-verma-level-zero", pass);
}

#[test]
fn criterion_06_induced_module() {
    // 2-dimensional base with H_1 invertible and every other listed
    // generator zero; the scan certifies no obstruction up to the truncation
    let table = ActionTable {
        dim: 2,
        parities: vec![false, false],
        generators: BTreeMap::from([(
            Gen::H(1),
            vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]],
        )]),
    };
    let spec = ModuleSpec::InducedG0q {
        q: 0,
        table,
        params: params_r(rat_zero(), rat_zero(), rat_zero(), rat_int(1), rat_zero()),
    };
    let handle = build_module(spec, HalfInt::from_int(3)).unwrap();
    let verdict = simplicity_scan(&handle, HalfInt::from_int(3), 6).unwrap();
    report(
        "6-induced-simplicity",
        verdict == SimplicityVerdict::NoObstructionUpTo(HalfInt::from_int(3)),
    );
}

#[test]
fn criterion_07_whittaker_transform() {
    let data = WhittakerData {
        m: 1,
        l_values: BTreeMap::from([(1, rat_int(5)), (2, rat_int(7))]),
        h_values: BTreeMap::from([(0, rat_int(2)), (1, rat_int(3))]),
        c: rat_int(0),
        z: rat_int(0),
        ell: rat_int(1),
    };
    let pp = whittaker_phi_prime(&data).unwrap();
    let mut pass = pp.c1 == rat(-3, 2)
        && pp.l_values[&1] == rat_int(-1)
        && pp.l_values[&2] == rat(5, 2);
    // each value reproduced as an exact eigenvalue of the primed operator
    let handle = build_module_with_budget(
        ModuleSpec::Whittaker(data),
        HalfInt::from_int(3),
        6,
    )
    .unwrap();
    let w = GradedVector::unit((PBWMonomial::one(), 0));
    for n in 1..=2i64 {
        let got = act_prime(&handle, PrimeOp::Lprime(n), &w).unwrap();
        let mut expect = w.clone();
        expect.scale(&pp.l_values[&n]);
        pass &= got == expect;
    }
    report("7-whittaker-transform", pass);
}

#[test]
fn criterion_08_whittaker_level_zero() {
    let make = |h1: i64| WhittakerData {
        m: 1,
        l_values: BTreeMap::from([(1, rat_int(1)), (2, rat_int(1))]),
        h_values: BTreeMap::from([(0, rat_int(2)), (1, rat_int(h1))]),
        c: rat_int(0),
        z: rat_int(1),
        ell: rat_int(0),
    };
    let mut pass = true;
    // H_1 -> 0: decisively not simple, witnessed by F(-1/2) w whose closure
    // within budget excludes w
    let degen = make(0);
    pass &= whittaker_simplicity(&degen, SimplicityMethod::Formula).unwrap()
        == SimplicityVerdict::FormulaNotSimple;
    let scan = whittaker_simplicity(
        &degen,
        SimplicityMethod::Scan {
            truncation: HalfInt::from_int(2),
            budget: 6,
        },
    )
    .unwrap();
    match scan {
        SimplicityVerdict::ObstructionAt { witness, .. } => {
            let handle = build_module_with_budget(
                ModuleSpec::Whittaker(degen),
                HalfInt::from_int(2),
                6,
            )
            .unwrap();
            pass &= vector_text(&handle, &witness) == "1*F(-1/2) v0";
        }
        _ => pass = false,
    }
    // H_1 -> 1: simple by formula, and the scan finds no obstruction
    let simple = make(1);
    pass &= whittaker_simplicity(&simple, SimplicityMethod::Formula).unwrap()
        == SimplicityVerdict::FormulaSimple;
    let scan = whittaker_simplicity(
        &simple,
        SimplicityMethod::Scan {
            truncation: HalfInt::from_int(2),
            budget: 6,
        },
    )
    .unwrap();
    pass &= !scan.is_obstruction();
    report("8-whittaker-level-zero", pass);
}

#[test]
fn criterion_09_sign_resolution() {
    // m = 1, l = 1, phi(H_1) = 2, all other non-central values zero, so the
    // two evaluation routes of the nonzero-level criterion disagree on
    // exactly one of phi(L_2) = +2 / -2 and the scan oracle arbitrates.
    // Recorded outcome: the +2 case (where only the literal route claims
    // simplicity) is the degenerate one -- the scan certifies a proper
    // submodule, so the minus sign of the derived route is the correct one.
    let make = |l2: i64| WhittakerData {
        m: 1,
        l_values: BTreeMap::from([(1, rat_int(0)), (2, rat_int(l2))]),
        h_values: BTreeMap::from([(0, rat_int(0)), (1, rat_int(2))]),
        c: rat_int(0),
        z: rat_int(0),
        ell: rat_int(1),
    };
    let mut pass = true;
    let mut decisive = Vec::new();
    for l2 in [2i64, -2] {
        let data = make(l2);
        pass &= whittaker_simplicity(&data, SimplicityMethod::Formula).unwrap()
            == SimplicityVerdict::Inconclusive { budget: 0 };
        let scan = whittaker_simplicity(
            &data,
            SimplicityMethod::Scan {
                truncation: HalfInt::from_int(3),
                budget: 8,
            },
        )
        .unwrap();
        if scan.is_obstruction() {
            decisive.push(l2);
        }
    }
    pass &= decisive == vec![2];
    report("9-sign-resolution", pass);
}

#[test]
fn criterion_10_determinism() {
    let bin = env!("CARGO_BIN_EXE_scca");
    let dir = std::env::temp_dir().join("scca-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let spec_path = dir.join("verma.json");
    std::fs::write(
        &spec_path,
        r#"{"construction":"verma","params":{"c":"0","z":"1","ell":"0","d":"-2","h":"0"},"truncation":"2"}"#,
    )
    .unwrap();
    let whit_path = dir.join("whittaker.json");
    std::fs::write(
        &whit_path,
        r#"{"construction":"whittaker","truncation":"2","budget":5,
            "whittaker":{"m":1,"ell":"0","z":"1","L":{"1":"1","2":"1"},"H":{"0":"2","1":"0"}}}"#,
    )
    .unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["verify-algebra".into(), "--max-index".into(), "2".into()],
        vec!["dims".into(), "--spec".into(), spec_path.display().to_string()],
        vec!["gram".into(), "--spec".into(), spec_path.display().to_string()],
        vec![
            "singular".into(),
            "--spec".into(),
            spec_path.display().to_string(),
        ],
        vec![
            "simplicity".into(),
            "--spec".into(),
            spec_path.display().to_string(),
        ],
        vec![
            "simplicity".into(),
            "--spec".into(),
            whit_path.display().to_string(),
        ],
    ];
    let mut pass = true;
    for args in &runs {
        let out1 = Command::new(bin).args(args).output().unwrap();
        let out2 = Command::new(bin).args(args).output().unwrap();
        pass &= out1.stdout == out2.stdout && !out1.stdout.is_empty();
        // every emitted number is an exact integer or p/q string
        pass &= !String::from_utf8_lossy(&out1.stdout).contains("e-");
    }
    report("10-determinism", pass);
}
