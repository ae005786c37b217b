//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::time::Instant;

use common::*;
use ftqc::csscode::{
    logical_controlled_phase, logical_pauli, transversal_cnot, transversal_h, transversal_phase, Block, CssCode,
    LogicalPauli,
};
use ftqc::f2linalg::{reed_muller, steane_classical};
use ftqc::gadgets::{GadgetConfig, Protocol};
use ftqc::montecarlo::{
    ancilla_a_amplitudes, export_results, memory_experiment, run_experiment, ExperimentConfig, ExperimentKind,
};
use ftqc::noise::{FaultPlan, PauliString};
use ftqc::statevec::{GateMatrix, SparseState, StandardGate};
use num_complex::Complex64;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn code_algebra() -> Outcome {
    let punctured = steane_classical();
    let class = punctured.classify().map_err(|e| e.to_string())?;
    let d = punctured.min_distance().map_err(|e| e.to_string())?;
    let t = punctured.correctable_errors().map_err(|e| e.to_string())?;
    let rm = reed_muller(1, 3).map_err(|e| e.to_string())?;
    let parent = rm.classify().map_err(|e| e.to_string())?;
    let weights: Vec<usize> = rm
        .weight_distribution()
        .map_err(|e| e.to_string())?
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .map(|(w, _)| w)
        .collect();
    let same = rm.puncture(7).map_err(|e| e.to_string())? == punctured;
    check(
        class.contains_dual && d == 3 && t == 1 && parent.self_dual && parent.doubly_even && weights == [0, 4, 8] && same,
        format!(
            "[7,4,{d}] contains_dual={} t={t}; RM(1,3) self_dual={} doubly_even={} weights={weights:?}",
            class.contains_dual, parent.self_dual, parent.doubly_even
        ),
    )
}

fn codeword_structure() -> Outcome {
    let code = CssCode::steane();
    let amp = 1.0 / 8f64.sqrt();
    let mut worst = 1.0f64;
    for v in [false, true] {
        let s = code.logical_state(v);
        let uniform = s.entries().iter().all(|(_, a)| (a - c(amp)).norm() < 1e-12);
        if s.support_size() != 8 || !uniform {
            return Err(format!("|s{}⟩ has support {} uniform={uniform}", u8::from(v), s.support_size()));
        }
        let mut m = ideal_machine(s, 0);
        transversal_h(&mut m, &code, Block::new(0, 7)).map_err(|e| e.to_string())?;
        worst = worst.min(m.state().fidelity(&code.c_state(v)).map_err(|e| e.to_string())?);
    }
    check(worst >= 1.0 - 1e-10, format!("support 8, amplitude 1/sqrt(8); H fidelity {worst:.12}"))
}

fn single_error_correction() -> Outcome {
    let proto = Protocol::steane();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let inputs = [
        proto.code.logical_state(false),
        proto.code.logical_state(true),
        proto.code.encode_logical(c(h), c(h)).map_err(|e| e.to_string())?,
    ];
    let mut worst = 1.0f64;
    let mut cases = 0;
    for start in &inputs {
        for pauli in [StandardGate::X, StandardGate::Y, StandardGate::Z] {
            for q in 0..7 {
                let mut m = ideal_machine(start.clone(), q as u64);
                m.apply_ideal(pauli, &[q]).map_err(|e| e.to_string())?;
                proto.correct_block(&mut m, Block::new(0, 7)).map_err(|e| e.to_string())?;
                worst = worst.min(m.state().fidelity(start).map_err(|e| e.to_string())?);
                cases += 1;
            }
        }
    }
    check(worst >= 1.0 - 1e-9, format!("{cases} cases, worst fidelity {worst:.12}"))
}

fn syndrome_back_action() -> Outcome {
    let proto = Protocol::steane();
    let code = &proto.code;
    let block = Block::new(0, 7);
    let start = code.encode_register(&random_amplitudes(1, &mut rng(4))).map_err(|e| e.to_string())?;
    let mut faults = 0;
    for &row in code.check_masks() {
        let mut clean = ideal_machine(start.clone(), 17);
        clean.enable_trace();
        proto.measure_syndrome_bit(&mut clean, block, row).map_err(|e| e.to_string())?;
        let trace = clean.trace().unwrap_or_default().to_vec();
        let mut plans = Vec::new();
        for (g, targets) in trace.iter().enumerate() {
            for p in 1..1usize << (2 * targets.len()) {
                plans.push(FaultPlan::new().gate(g as u64, PauliString::from_index(targets.len(), p)));
            }
        }
        plans.extend((0..clean.measurement_count()).map(|i| FaultPlan::new().measurement(i)));
        for plan in plans {
            let mut m = ideal_machine(start.clone(), 17).with_plan(plan.clone());
            proto.measure_syndrome_bit(&mut m, block, row).map_err(|e| e.to_string())?;
            let weight = ftqc::csscode::error_weight(&start, m.state(), block, 1).map_err(|e| e.to_string())?;
            if weight.is_none() {
                return Err(format!("fault {plan:?} on check {row:07b} left more than one error"));
            }
            faults += 1;
        }
    }
    Ok(format!("{faults} single faults over 3 checks, each leaves at most 1 data error"))
}

fn transversal_gates() -> Outcome {
    let code = CssCode::steane();
    let sign = code.phase_sign().ok_or("code has no transversal phase")?;
    let (b0, b1) = (Block::new(0, 7), Block::new(7, 7));
    let mut r = rng(21);
    let mut worst = 1.0f64;
    let names = ["H", "PHASE", "CNOT", "CZ", "X", "Z"];
    for name in names {
        for _ in 0..20 {
            let amps = random_amplitudes(2, &mut r);
            let mut m = ideal_machine(code.encode_register(&amps).map_err(|e| e.to_string())?, 0);
            let (gate, targets): (GateMatrix, Vec<usize>) = match name {
                "H" => {
                    transversal_h(&mut m, &code, b0).map_err(|e| e.to_string())?;
                    (StandardGate::H.matrix(), vec![0])
                }
                "PHASE" => {
                    transversal_phase(&mut m, &code, b1, false).map_err(|e| e.to_string())?;
                    let g = GateMatrix::new(1, vec![c(1.0), c(0.0), c(0.0), sign.phase(false)]).map_err(|e| e.to_string())?;
                    (g, vec![1])
                }
                "CNOT" => {
                    transversal_cnot(&mut m, &code, b1, b0).map_err(|e| e.to_string())?;
                    (StandardGate::Cnot.matrix(), vec![1, 0])
                }
                "CZ" => {
                    logical_controlled_phase(&mut m, &code, b0, b1).map_err(|e| e.to_string())?;
                    (StandardGate::Cz.matrix(), vec![0, 1])
                }
                "X" => {
                    logical_pauli(&mut m, &code, b0, LogicalPauli::X).map_err(|e| e.to_string())?;
                    (StandardGate::X.matrix(), vec![0])
                }
                _ => {
                    logical_pauli(&mut m, &code, b1, LogicalPauli::Z).map_err(|e| e.to_string())?;
                    (StandardGate::Z.matrix(), vec![1])
                }
            };
            let got = code.decode_register(m.state(), &[b0, b1]).map_err(|e| e.to_string())?;
            worst = worst.min(overlap(&got, &oracle(&amps, &gate, &targets)));
        }
    }
    check(
        worst >= 1.0 - 1e-9,
        format!("{} gates x 20 inputs, worst fidelity {worst:.12}; bitwise PHASE realizes diag(1,{})", names.len(), sign.phase(false)),
    )
}

fn ancilla_factory() -> Outcome {
    let proto = Protocol::steane();
    let target = proto.code.encode_register(&ancilla_a_amplitudes()).map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    let mut ok = true;
    for parity in [false, true] {
        let mut m = ideal_machine(SparseState::zero(0).map_err(|e| e.to_string())?, 0);
        m.force_cat_parities([parity]);
        let (anc, _) = proto.prepare_ancilla_a(&mut m, 1).map_err(|e| e.to_string())?;
        let f = m.state().fidelity(&target).map_err(|e| e.to_string())?;
        ok &= anc.parities == [parity] && f >= 1.0 - 1e-10;
        detail.push(format!("parity {}: fidelity {f:.12}", u8::from(parity)));
    }
    check(ok, detail.join(", "))
}

fn run_toffoli(proto: &Protocol, amps: &[Complex64], seed: u64, forced: Option<([bool; 3], bool)>) -> Result<Vec<Complex64>, String> {
    let start = proto.code.encode_register(amps).map_err(|e| e.to_string())?;
    let mut m = ideal_machine(start, seed);
    if let Some((branches, parity)) = forced {
        m.force_logical_outcomes(branches);
        m.force_cat_parities([parity]);
    }
    let (q1, q2, q3) = (Block::new(0, 7), Block::new(7, 7), Block::new(14, 7));
    let (out, _) = proto.toffoli(&mut m, q1, q2, q3).map_err(|e| e.to_string())?;
    proto.code.decode_register(m.state(), &out.blocks).map_err(|e| e.to_string())
}

fn toffoli_gadget() -> Outcome {
    let proto = Protocol::steane().with_config(GadgetConfig { ancilla_rounds: 1, ..GadgetConfig::default() });
    let mut runs = 0;
    for input in 0..8usize {
        let (x, y, z) = (input & 1, (input >> 1) & 1, input >> 2);
        let expected = x | (y << 1) | ((z ^ (x & y)) << 2);
        for branch in 0..8u8 {
            for parity in [false, true] {
                let b = [branch & 1 == 1, branch & 2 == 2, branch & 4 == 4];
                let got = run_toffoli(&proto, &basis_amplitudes(3, input), branch as u64, Some((b, parity)))?;
                if got[expected].norm_sqr() < 1.0 - 1e-9 {
                    return Err(format!("input {input:03b} branch {branch:03b} parity {parity}"));
                }
                runs += 1;
            }
        }
    }
    let proto = Protocol::steane();
    let mut r = rng(77);
    let mut worst = 1.0f64;
    for seed in 0..10 {
        let amps = random_amplitudes(3, &mut r);
        let got = run_toffoli(&proto, &amps, seed, None)?;
        worst = worst.min(overlap(&got, &oracle(&amps, StandardGate::Toffoli.fixed(), &[0, 1, 2])));
    }
    check(
        worst >= 1.0 - 1e-9,
        format!("truth table on {runs} forced branches; 10 superpositions, worst fidelity {worst:.12}"),
    )
}

fn error_suppression() -> Outcome {
    let config = ExperimentConfig::new(ExperimentKind::Memory, vec![3e-4, 1e-3, 3e-3], 100_000, 1);
    let result = memory_experiment(&config).map_err(|e| e.to_string())?;
    let fit = result.fit.as_ref().ok_or("no fit")?;
    let at = result.record(1e-3).ok_or("missing p=1e-3")?;
    let base = at.baseline.as_ref().ok_or("missing baseline")?;
    let rates: Vec<String> = result
        .records
        .iter()
        .map(|r| format!("p={}: {}/{}", r.p, r.failures, r.trials))
        .collect();
    check(
        (1.6..=2.4).contains(&fit.slope) && at.rate < base.rate,
        format!(
            "slope {:.3} +/- {:.3} ({}); at p=1e-3 encoded {:.2e} vs bare {:.2e} over {:.0} gate slots",
            fit.slope,
            fit.slope_stderr,
            rates.join(", "),
            at.rate,
            base.rate,
            at.gates_mean
        ),
    )
}

fn engine_cross_validation() -> Outcome {
    let mut r = rng(9);
    let mut worst = 1.0f64;
    for _ in 0..100 {
        let n = r.random_range(1..=10);
        let len = r.random_range(1..=30);
        worst = worst.min(engines_agree(n, &random_circuit(n, len, &mut r)));
    }
    check(worst >= 1.0 - 1e-10, format!("100 circuits, worst fidelity {worst:.12}"))
}

fn numeric_columns(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_string())
        .collect()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = Vec::new();
    for (kind, p, trials) in [
        (ExperimentKind::Memory, vec![1e-3, 3e-3], 2000),
        (ExperimentKind::TransversalGate, vec![2e-3], 40),
        (ExperimentKind::Toffoli, vec![1e-3], 8),
    ] {
        let config = ExperimentConfig::new(kind, p, trials, 2024);
        let mut files = Vec::new();
        for run in 0..2 {
            let result = run_experiment(&config).map_err(|e| e.to_string())?;
            let (csv, _) = export_results(&result, dir.path().join(format!("{kind:?}-{run}"))).map_err(|e| e.to_string())?;
            files.push(std::fs::read_to_string(csv).map_err(|e| e.to_string())?);
        }
        if numeric_columns(&files[0]) != numeric_columns(&files[1]) {
            return Err(format!("{kind:?} reruns differ"));
        }
        compared.push(format!("{kind:?}"));
    }
    Ok(format!("identical CSV numeric fields on rerun: {}", compared.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("code algebra", code_algebra),
        ("codeword structure", codeword_structure),
        ("exhaustive single-error correction", single_error_correction),
        ("syndrome back-action", syndrome_back_action),
        ("transversal-gate equivalence", transversal_gates),
        ("ancilla factory", ancilla_factory),
        ("Toffoli gadget", toffoli_gadget),
        ("error suppression", error_suppression),
        ("engine cross-validation", engine_cross_validation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
