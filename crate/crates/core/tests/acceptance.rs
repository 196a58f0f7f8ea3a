//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use clifford_synth::circuit::{Circuit, Gate};
use clifford_synth::codes::{css_build, derive_logical_z, CssSpec};
use clifford_synth::decompose::{decompose, expand_all};
use clifford_synth::gf2::{symplectic_inner, BinMatrix, BinVector, SymplecticMatrix};
use clifford_synth::par::Execution;
use clifford_synth::pauli::PauliOperator;
use clifford_synth::sympsolve::{
    apply_transvection, find_symplectic, map_vector, symplectic_group_order, SymplecticSystem,
    DEFAULT_CAP,
};
use clifford_synth::synth::{
    build_system, normalizer_to_centralizer, synthesize, Mode, SynthesisOptions,
};
use clifford_synth::verify::{
    apply_pauli, conjugate, dense_unitary, induced_symplectic, prepare_css_state, same_action,
};
use common::dense;
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DENSE_TOL: f64 = 1e-10;
const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const FIVE_QUBIT_TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn as_set(ms: impl IntoIterator<Item = BinMatrix>) -> HashSet<BinMatrix> {
    ms.into_iter().collect()
}

fn golden_operators() -> [(&'static str, &'static str); 4] {
    [
        ("phase1.spec", "phase1"),
        ("cz12.spec", "cz12"),
        ("cnot21.spec", "cnot21"),
        ("hadamard1.spec", "hadamard1"),
    ]
}

fn criterion_1() -> Outcome {
    let code = code642();
    let mut slowest = Duration::ZERO;
    for (spec_file, golden_name) in golden_operators() {
        let spec = spec(spec_file);
        let start = Instant::now();
        let results =
            synthesize(&code, &spec, &SynthesisOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let expected = golden(golden_name);
        ensure(
            results.len() == 8,
            format!("{spec_file}: {} solutions", results.len()),
        )?;
        ensure(
            expected.len() == 8,
            format!("{golden_name}: fixture has {}", expected.len()),
        )?;
        let got = as_set(results.iter().map(|r| r.symplectic.matrix().clone()));
        ensure(got.len() == 8, format!("{spec_file}: duplicate solutions"))?;
        ensure(
            got == as_set(expected),
            format!("{spec_file}: solution set differs from golden"),
        )?;
        ensure(
            results.iter().all(|r| r.report.passed()),
            format!("{spec_file}: unverified"),
        )?;
        ensure(
            elapsed < GOLDEN_TIME_LIMIT,
            format!("{spec_file}: took {elapsed:?}"),
        )?;
    }
    Ok(format!(
        "4 operators x 8 solutions match; slowest {slowest:?}"
    ))
}

fn criterion_2() -> Outcome {
    let code = code642();
    let opts = SynthesisOptions {
        mode: Mode::MinDepth,
        ..SynthesisOptions::default()
    };
    let best = synthesize(&code, &spec("phase1.spec"), &opts).map_err(|e| e.to_string())?;
    let mut gates: Vec<String> = best[0]
        .circuit
        .gates()
        .iter()
        .map(ToString::to_string)
        .collect();
    gates.sort();
    ensure(
        gates == ["CZ 2 6", "P 2", "P 6"],
        format!("min-depth phase circuit is {gates:?}"),
    )?;

    let reference = Circuit::from_gates(
        6,
        vec![Gate::Z(5), Gate::cz(1, 2), Gate::cz(1, 5), Gate::cz(2, 5)],
    )
    .map_err(|e| e.to_string())?;
    let family = synthesize(&code, &spec("cz12.spec"), &SynthesisOptions::default())
        .map_err(|e| e.to_string())?;
    let hit = family.iter().find(|r| same_action(&r.circuit, &reference));
    let hit = hit.ok_or("no controlled-Z solution matches CZ36 CZ26 CZ23 Z6")?;
    Ok(format!(
        "phase depth {} gates {gates:?}; CZ match is solution {} ({})",
        best[0].depth,
        hit.index,
        hit.circuit.body_text().trim().replace('\n', "; ")
    ))
}

fn criterion_3() -> Outcome {
    let c642 = code642();
    for (spec_file, _) in golden_operators() {
        let n = build_system(&c642, &spec(spec_file))
            .and_then(|s| s.solutions())
            .map_err(|e| e.to_string())?
            .count();
        ensure(n == 8, format!("{spec_file}: {n} solutions"))?;
    }
    let c513 = code513();
    ensure(c513.solutions_per_operator() == 1024, "count law for k = 4")?;
    let start = Instant::now();
    let results = synthesize(
        &c513,
        &spec("five_qubit_phase.spec"),
        &SynthesisOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        results.len() == 1024,
        format!("[[5,1,3]]: {} solutions", results.len()),
    )?;
    let distinct = as_set(results.iter().map(|r| r.symplectic.matrix().clone()));
    ensure(
        distinct.len() == 1024,
        "[[5,1,3]] solutions are not distinct",
    )?;
    ensure(
        results.iter().all(|r| r.report.passed()),
        "[[5,1,3]] verification failed",
    )?;
    ensure(
        elapsed < FIVE_QUBIT_TIME_LIMIT,
        format!("[[5,1,3]] took {elapsed:?}"),
    )?;
    Ok(format!(
        "8 per [[6,4,2]] operator; 1024 for [[5,1,3]] in {elapsed:?}"
    ))
}

fn random_system<R: Rng>(rng: &mut R, m: usize) -> SymplecticSystem {
    let basis = random_symplectic(rng, m).into_matrix();
    let g = random_symplectic(rng, m);
    let targets = (0..2 * m)
        .map(|r| rng.gen_bool(0.5).then(|| g.apply(basis.row(r))))
        .collect();
    SymplecticSystem::with_basis(basis, targets).unwrap()
}

fn random_pair_system<R: Rng>(rng: &mut R, m: usize) -> SymplecticSystem {
    let g = random_symplectic(rng, m);
    let t = rng.gen_range(0..=2 * m);
    let mut xs: Vec<BinVector> = Vec::new();
    while xs.len() < t {
        let x = random_nonzero(rng, 2 * m);
        let mut trial = xs.clone();
        trial.push(x.clone());
        if BinMatrix::from_rows(2 * m, trial).unwrap().rank() == xs.len() + 1 {
            xs.push(x);
        }
    }
    let pairs: Vec<_> = xs.iter().map(|x| (x.clone(), g.apply(x))).collect();
    SymplecticSystem::from_constraints(m, &pairs).unwrap()
}

fn criterion_4() -> Outcome {
    let sp2 = brute_force_sp(1);
    let sp4 = brute_force_sp(2);
    ensure(
        sp2.len() == 6 && symplectic_group_order(1) == 6,
        format!("|Sp(2)| = {}", sp2.len()),
    )?;
    ensure(
        sp4.len() == 720 && symplectic_group_order(2) == 720,
        format!("|Sp(4)| = {}", sp4.len()),
    )?;
    for (m, all) in [(1, &sp2), (2, &sp4)] {
        let sys =
            SymplecticSystem::with_basis(BinMatrix::identity(2 * m), vec![None; 2 * m]).unwrap();
        let got = sys
            .enumerate_all(DEFAULT_CAP, Execution::default())
            .unwrap();
        ensure(
            as_set(got.into_iter().map(SymplecticMatrix::into_matrix))
                == as_set(all.iter().cloned()),
            format!("unconstrained enumeration differs at m = {m}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut systems: Vec<SymplecticSystem> = (0..25).map(|_| random_system(&mut rng, 2)).collect();
    systems.extend((0..15).map(|_| random_pair_system(&mut rng, 2)));
    let mut law_checked = 0;
    for (i, sys) in systems.iter().enumerate() {
        let got = sys
            .enumerate_all(DEFAULT_CAP, Execution::default())
            .unwrap();
        let expected: Vec<BinMatrix> = sp4
            .iter()
            .filter(|f| sys.is_solution(&SymplecticMatrix::new(f.to_owned().clone()).unwrap()))
            .cloned()
            .collect();
        let got_set = as_set(got.into_iter().map(SymplecticMatrix::into_matrix));
        ensure(
            got_set == as_set(expected.clone()),
            format!("system {i}: enumeration differs"),
        )?;
        let t = sys.targets();
        let open_pair = (0..2).any(|d| t[d].is_none() && t[d + 2].is_none());
        if !open_pair {
            let a = sys.alpha() as u32;
            ensure(
                expected.len() as u128 == 1u128 << (a * (a + 1) / 2),
                format!("system {i}: count law fails"),
            )?;
            law_checked += 1;
        }
    }
    Ok(format!(
        "|Sp(2)| = 6, |Sp(4)| = 720; {} random systems equal brute force ({law_checked} also match 2^(a(a+1)/2))",
        systems.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=6);
        let x = random_nonzero(&mut rng, 2 * m);
        let y = random_nonzero(&mut rng, 2 * m);
        let hs = map_vector(&x, &y).map_err(|e| e.to_string())?;
        ensure(hs.len() <= 2, "map_vector used more than two transvections")?;
        let img = hs
            .iter()
            .fold(x.clone(), |acc, h| apply_transvection(h, &acc));
        ensure(img == y, format!("map_vector failed for {x} -> {y}"))?;
    }
    for _ in 0..200 {
        let m = rng.gen_range(1..=6);
        let g = random_symplectic(&mut rng, m);
        let t = rng.gen_range(0..=2 * m);
        let mut xs: Vec<BinVector> = Vec::new();
        while xs.len() < t {
            let x = random_nonzero(&mut rng, 2 * m);
            let mut trial = xs.clone();
            trial.push(x.clone());
            if BinMatrix::from_rows(2 * m, trial).unwrap().rank() == xs.len() + 1 {
                xs.push(x);
            }
        }
        let cons: Vec<_> = xs.iter().map(|x| (x.clone(), g.apply(x))).collect();
        let found = find_symplectic(&cons, m).map_err(|e| e.to_string())?;
        ensure(
            found.transvections.len() <= 2 * t,
            "find_symplectic exceeded 2t transvections",
        )?;
        ensure(
            is_symplectic_by_product(found.matrix.matrix()),
            "result is not symplectic",
        )?;
        ensure(
            cons.iter().all(|(x, y)| &found.matrix.apply(x) == y),
            "constraint violated",
        )?;
    }
    Ok("1000 map_vector pairs, 200 find_symplectic systems".into())
}

fn check_roundtrip(f: &SymplecticMatrix, seen: &mut usize) -> Result<(), String> {
    let m = f.m();
    let factors = decompose(f).map_err(|e| e.to_string())?;
    ensure(
        expand_all(&factors, m).unwrap() == *f,
        "factor product differs",
    )?;
    for factor in &factors {
        let gates = factor.to_gates(m).unwrap();
        let c = Circuit::from_gates(m, gates).unwrap();
        ensure(
            induced_symplectic(&c) == *factor.expand(m).unwrap().matrix(),
            format!("gates of {factor:?} induce the wrong matrix"),
        )?;
        *seen += 1;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut factors = 0;
    for f in brute_force_sp(2) {
        check_roundtrip(&SymplecticMatrix::new(f).unwrap(), &mut factors)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        check_roundtrip(&random_symplectic(&mut rng, 6), &mut factors)?;
    }
    Ok(format!(
        "720 + 1000 matrices round-trip; {factors} factors lowered to gates"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let m = rng.gen_range(1..=3);
        let c = random_circuit(&mut rng, m, 20);
        let u = dense::circuit_unitary(&c);
        let ud = dense::adjoint(&u);
        let lib = dense_unitary(&c).map_err(|e| e.to_string())?;
        for (i, row) in u.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                worst = worst.max((lib.get(i, j) - v).norm());
            }
        }
        let (sym, signs) = clifford_synth::verify::induced_symplectic_signed(&c);
        for p in all_paulis(m) {
            let img = conjugate(&c, &p);
            let lhs = dense::mul(&dense::mul(&u, &dense::pauli_label(&p)), &ud);
            worst = worst.max(dense::max_diff(&lhs, &dense::pauli_label(&img)));
            ensure(
                img.symplectic() == p.symplectic().mul_matrix(&sym),
                "symplectic image mismatch",
            )?;
        }
        for (r, s) in signs.iter().enumerate() {
            let g = if r < m {
                PauliOperator::x_on(m, r)
            } else {
                PauliOperator::z_on(m, r - m)
            };
            ensure((conjugate(&c, &g).kappa() == 2) == *s, "sign mismatch")?;
        }
    }
    ensure(worst < DENSE_TOL, format!("dense deviation {worst:e}"))?;
    Ok(format!("1000 circuits, max deviation {worst:.1e}"))
}

fn conj_case(m: usize, gate: Gate, input: &str, output: &str) -> Result<(), String> {
    let c = Circuit::from_gates(m, vec![gate.clone()]).unwrap();
    let got = conjugate(&c, &pauli(input));
    ensure(
        got == pauli(output),
        format!("{gate}: {input} -> {got}, expected {output}"),
    )?;
    let u = dense::circuit_unitary(&c);
    let lhs = dense::mul(
        &dense::mul(&u, &dense::pauli_label(&pauli(input))),
        &dense::adjoint(&u),
    );
    ensure(
        dense::max_diff(&lhs, &dense::pauli_label(&pauli(output))) < DENSE_TOL,
        format!("{gate}: dense check of {input} -> {output} fails"),
    )
}

fn criterion_8() -> Outcome {
    let controlled = |u: dense::M| {
        let mut out = dense::kron(
            &dense::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]),
            &dense::eye(2),
        );
        let low = dense::kron(&dense::from_real(&[&[0.0, 0.0], &[0.0, 1.0]]), &u);
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v += low[r][c];
            }
        }
        out
    };
    let one = |g: Gate| dense::circuit_unitary(&Circuit::from_gates(2, vec![g]).unwrap());
    let swap =
        dense::circuit_unitary(&Circuit::from_gates(2, vec![Gate::Permute(vec![1, 0])]).unwrap());
    let flip = |u: &dense::M| dense::mul(&dense::mul(&swap, u), &swap);
    ensure(
        dense::max_diff(&controlled(dense::z()), &one(Gate::cz(0, 1))) < DENSE_TOL,
        "controlled Z, top control",
    )?;
    ensure(
        dense::max_diff(&controlled(dense::x()), &one(Gate::cnot(0, 1))) < DENSE_TOL,
        "controlled X, top control",
    )?;
    ensure(
        dense::max_diff(&flip(&controlled(dense::z())), &one(Gate::cz(1, 0))) < DENSE_TOL,
        "controlled Z, bottom control",
    )?;
    ensure(
        dense::max_diff(&flip(&controlled(dense::x())), &one(Gate::cnot(1, 0))) < DENSE_TOL,
        "controlled X, bottom control",
    )?;
    let h2 = one(Gate::H(1));
    ensure(
        dense::max_diff(
            &dense::mul(&dense::mul(&h2, &one(Gate::cnot(0, 1))), &h2),
            &one(Gate::cz(0, 1)),
        ) < DENSE_TOL,
        "CZ from Hadamard-conjugated CNOT",
    )?;
    ensure(
        dense::max_diff(
            &dense::mul(&dense::mul(&h2, &one(Gate::cz(0, 1))), &h2),
            &one(Gate::cnot(0, 1)),
        ) < DENSE_TOL,
        "CNOT from Hadamard-conjugated CZ",
    )?;
    let hcz = Circuit::from_gates(2, vec![Gate::H(1), Gate::cnot(0, 1), Gate::H(1)]).unwrap();
    ensure(
        same_action(&hcz, &Circuit::from_gates(2, vec![Gate::cz(0, 1)]).unwrap()),
        "Hadamard-conjugated CNOT acts as CZ",
    )?;
    let cz = Gate::cz(0, 1);
    let cx = Gate::cnot(0, 1);
    let table = [
        (cz.clone(), "XI", "XZ"),
        (cx.clone(), "XI", "XX"),
        (cz.clone(), "ZI", "ZI"),
        (cx.clone(), "ZI", "ZI"),
        (cz.clone(), "IZ", "IZ"),
        (cx.clone(), "IX", "IX"),
        (cz.clone(), "IX", "ZX"),
        (cx.clone(), "IZ", "ZZ"),
        (cz.clone(), "XX", "YY"),
        (cx.clone(), "XZ", "-YY"),
    ];
    for (g, i, o) in table {
        conj_case(2, g, i, o)?;
    }
    for (g, i, o) in [
        (Gate::H(0), "Z", "X"),
        (Gate::H(0), "X", "Z"),
        (Gate::P(0), "Z", "Z"),
        (Gate::P(0), "X", "Y"),
    ] {
        conj_case(1, g, i, o)?;
    }
    conj_case(2, Gate::cnot(0, 1), "XZ", "-YY")?;
    conj_case(2, Gate::cz(0, 1), "XX", "YY")?;
    Ok("controlled-gate, Hadamard and phase identities hold symbolically and densely".into())
}

fn criterion_9() -> Outcome {
    let hc = mat(&["111111"]);
    let gx = mat(&["110000", "101000", "100100", "100010"]);
    let gz_expected = mat(&["010001", "001001", "000101", "000011"]);
    ensure(
        derive_logical_z(&gx, &hc).unwrap() == gz_expected,
        "derived logical Z rows differ",
    )?;
    let code = css_build(&CssSpec::SelfOrthogonal {
        hc,
        gx: Some(gx),
        gz: None,
    })
    .map_err(|e| e.to_string())?;
    let stabs: Vec<String> = code.stabilizers().iter().map(ToString::to_string).collect();
    ensure(
        stabs == ["XXXXXX", "ZZZZZZ"],
        format!("stabilizers {stabs:?}"),
    )?;
    let lx: Vec<String> = code.logical_x().iter().map(ToString::to_string).collect();
    let lz: Vec<String> = code.logical_z().iter().map(ToString::to_string).collect();
    ensure(
        lx == ["XXIIII", "XIXIII", "XIIXII", "XIIIXI"],
        format!("logical X {lx:?}"),
    )?;
    ensure(
        lz == ["IZIIIZ", "IIZIIZ", "IIIZIZ", "IIIIZZ"],
        format!("logical Z {lz:?}"),
    )?;
    ensure(code == code642(), "built code differs from the fixture")?;

    let psi0 = prepare_css_state(&code, &BinVector::zeros(4)).map_err(|e| e.to_string())?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut want = vec![Complex64::new(0.0, 0.0); 64];
    want[0] = Complex64::new(s, 0.0);
    want[63] = Complex64::new(s, 0.0);
    let dev0 = psi0
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    ensure(dev0 < DENSE_TOL, format!("|psi_0> deviates by {dev0:e}"))?;

    let close = |a: &[Complex64], b: &[Complex64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            < DENSE_TOL
    };
    for xi in 0..16u32 {
        let x = BinVector::from_bits(&(0..4).map(|j| (xi >> j) & 1 == 1).collect::<Vec<_>>());
        let psi = prepare_css_state(&code, &x).unwrap();
        for g in code.stabilizers() {
            ensure(
                close(&apply_pauli(g, &psi), &psi),
                "code state not stabilized",
            )?;
        }
        for j in 0..4 {
            let mut flipped = x.clone();
            flipped.flip(j);
            let target = prepare_css_state(&code, &flipped).unwrap();
            ensure(
                close(&apply_pauli(&code.logical_x()[j], &psi), &target),
                "bit flip fails",
            )?;
            let sign = if x.get(j) { -1.0 } else { 1.0 };
            let scaled: Vec<Complex64> = psi.iter().map(|a| a * sign).collect();
            ensure(
                close(&apply_pauli(&code.logical_z()[j], &psi), &scaled),
                "phase flip fails",
            )?;
        }
    }
    Ok("stabilizers, logical Paulis and all 16 code states check out".into())
}

fn criterion_10() -> Outcome {
    let code = code642();
    let swap16 = BinMatrix::permutation(&[5, 1, 2, 3, 4, 0]);
    let zero = BinMatrix::zeros(6, 6);
    let f_n =
        SymplecticMatrix::new(BinMatrix::from_blocks(&zero, &swap16, &swap16, &zero).unwrap())
            .map_err(|e| e.to_string())?;
    let spec_n = spec("hadamard_all.spec");
    ensure(
        build_system(&code, &spec_n).unwrap().is_solution(&f_n),
        "transversal H is not a normalizing solution",
    )?;
    let mut checked = 0;
    let mut candidates = vec![f_n];
    candidates.extend(
        build_system(&code, &spec_n)
            .unwrap()
            .enumerate_all(DEFAULT_CAP, Execution::default())
            .unwrap(),
    );
    let s = code.stabilizer_matrix();
    for f in &candidates {
        let f_c = normalizer_to_centralizer(&code, f).map_err(|e| e.to_string())?;
        for j in 0..s.rows() {
            ensure(f_c.apply(s.row(j)) == *s.row(j), "generator row not fixed")?;
        }
        for l in code.logical_x().iter().chain(code.logical_z()) {
            let v = l.symplectic();
            ensure(f_c.apply(&v) == f.apply(&v), "logical image changed")?;
        }
        ensure(
            !symplectic_inner(&s.row(0).clone(), &f_c.apply(s.row(1))),
            "generators anticommute",
        )?;
        checked += 1;
    }
    let spec_c = {
        let mut sp = spec_n.clone();
        sp.policy = clifford_synth::synth::Policy::Centralize;
        sp
    };
    let f_c = normalizer_to_centralizer(&code, &candidates[0]).unwrap();
    let result =
        clifford_synth::synth::synthesize_one(&code, &spec_c, f_c, 0).map_err(|e| e.to_string())?;
    Ok(format!(
        "{checked} normalizing solutions converted; centralizing circuit has depth {}",
        result.depth
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden solution sets", criterion_1),
        ("golden circuits", criterion_2),
        ("solution-count law", criterion_3),
        ("brute-force equivalence", criterion_4),
        ("transvection bounds", criterion_5),
        ("decomposition round trip", criterion_6),
        ("symbolic vs dense conjugation", criterion_7),
        ("circuit identities", criterion_8),
        ("CSS construction", criterion_9),
        ("normalizer to centralizer", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {:>2} {name}: {detail} ({t:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {:>2} {name}: {detail} ({t:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
