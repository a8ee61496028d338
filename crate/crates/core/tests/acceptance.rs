//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

mod common;

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{oracle, rng, sx_entries};
use qdiscord::channel::x_state_defect;
use qdiscord::sample::{random_channel, random_two_qubit_state};
use qdiscord::state::{bell_phi_plus, classical_copy};
use qdiscord::thermo::lost_work_bits;
use qdiscord::{
    apply, build_liouvillian, conditional_entropy, discord, initial_state, lift_local,
    min_decoherence_lost_work, mutual_information, propagate, run_protocol, steady_state,
    update_channel, Config, DensityMatrix, OptimizerConfig, Ordering, Party, State,
};

type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(budget: Option<Duration>, check: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = check();
    let elapsed = start.elapsed();
    out.detail = format!("{}; {:.2} s", out.detail, elapsed.as_secs_f64());
    if let Some(limit) = budget {
        if elapsed > limit {
            out.pass = false;
            out.detail += &format!(" exceeds {} s budget", limit.as_secs_f64());
        }
    }
    out
}

fn steady_state_reproduction() -> Outcome {
    let ss = steady_state(&build_liouvillian(1.0, Ordering::SX).unwrap()).unwrap();
    let m = ss.matrix();
    let mut diag: Vec<f64> = (0..4).map(|i| m[(i, i)].re).collect();
    diag.sort_by(f64::total_cmp);
    let want = [2.0 / 9.0, 2.0 / 9.0, 5.0 / 18.0, 5.0 / 18.0];
    let diag_err = diag.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let mut off_err = 0.0f64;
    let mut rest = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                off_err = off_err.max(m[(i, i)].im.abs());
            } else if i + j == 3 {
                off_err = off_err.max((m[(i, j)] - (-1.0 / 9.0)).norm());
            } else {
                rest = rest.max(m[(i, j)].norm());
            }
        }
    }
    let printed = [2.0 / 9.0, 5.0 / 18.0, 2.0 / 9.0, 5.0 / 18.0];
    let placement = |s: &State| {
        (0..4).all(|i| (s.matrix()[(i, i)].re - printed[i]).abs() < 1e-8)
    };
    let xs = steady_state(&build_liouvillian(1.0, Ordering::XS).unwrap()).unwrap();
    let reversed = (0..4).all(|i| (xs.matrix()[(3 - i, 3 - i)].re - printed[i]).abs() < 1e-8);
    let as_printed = match (placement(&ss), placement(&xs), reversed) {
        (true, _, _) => "S⊗X",
        (_, true, _) => "X⊗S",
        (_, _, true) => "X⊗S with reversed basis labels",
        _ => "no candidate ordering",
    };
    Outcome {
        pass: diag_err < 1e-8 && off_err < 1e-8 && rest < 1e-8,
        detail: format!(
            "diag err {diag_err:.1e}, X-state off-diag err {off_err:.1e}, other entries {rest:.1e}; \
             printed placement: {as_printed}"
        ),
    }
}

fn random_states(seed: u64, n: usize) -> Vec<State> {
    let mut r = rng(seed);
    (0..n).map(|_| random_two_qubit_state(&mut r)).collect()
}

fn decoherence_identity() -> Outcome {
    let cfg = OptimizerConfig::default();
    let beta = 1.0;
    let worst = random_states(11, 100)
        .iter()
        .map(|rho| {
            let (w, _) = min_decoherence_lost_work(rho, beta, &cfg).unwrap();
            let d = discord(rho, Party::X, &cfg).unwrap().discord;
            (w * beta / LN_2 - d).abs()
        })
        .fold(0.0, f64::max);
    Outcome {
        pass: worst < 1e-6,
        detail: format!("max |beta W_min / ln2 - delta(S|X)| = {worst:.2e} bits over 100 states"),
    }
}

fn data_processing() -> Outcome {
    let mut r = rng(23);
    let mut worst = f64::INFINITY;
    for k in 0..1000 {
        let rho: State = random_two_qubit_state(&mut r);
        let ch = random_channel(2, 1 + k % 4, &mut r);
        let lifted = lift_local(&ch, &[2, 2], Ordering::SX).unwrap();
        let after = apply(&lifted, &rho).unwrap();
        worst = worst.min(lost_work_bits(&rho, &after).unwrap());
    }
    Outcome {
        pass: worst >= -1e-9,
        detail: format!("min W_lost = {worst:.3e} bits over 1000 state/channel pairs"),
    }
}

fn figure_two_shape() -> Outcome {
    let recs = run_protocol(&Config::default()).unwrap();
    let mut fails = Vec::new();
    for r in &recs {
        if r.w_lost < 0.0 {
            fails.push(format!("W_lost({}) = {:.3e}", r.step, r.w_lost));
        }
        if r.w_classical < 0.0 {
            fails.push(format!("W_C({}) = {:.3e}", r.step, r.w_classical));
        }
        if r.step >= 2 && r.w_quantum >= 0.0 {
            fails.push(format!("W_Q({}) = {:.3e}", r.step, r.w_quantum));
        }
    }
    if recs[0].w_lost.abs() > 1e-10 {
        fails.push(format!("W_lost(t0) = {:.3e}", recs[0].w_lost));
    }
    let row = |i: usize| -> Vec<f64> {
        recs[i].csv_fields()[2..].iter().map(|s| s.parse().unwrap()).collect()
    };
    let drift = row(8)
        .iter()
        .zip(row(9))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if drift >= 1e-6 {
        fails.push(format!("step 8 -> 9 drift {drift:.2e}"));
    }
    let last = recs.last().unwrap();
    Outcome {
        pass: fails.is_empty() && recs.len() == 10,
        detail: if fails.is_empty() {
            format!(
                "W_lost -> {:.6}, W_C -> {:.6}, W_Q -> {:.6}; drift {drift:.1e}",
                last.w_lost, last.w_classical, last.w_quantum
            )
        } else {
            fails.join(", ")
        },
    }
}

fn minimizing_basis() -> Outcome {
    let recs = run_protocol(&Config::default()).unwrap();
    let off: Vec<String> = recs
        .iter()
        .flat_map(|r| {
            [("pre", r.basis_pre), ("post", r.basis_post)]
                .into_iter()
                .filter(|(_, b)| !b.is_computational(1.0))
                .map(move |(tag, b)| {
                    format!("step {} {tag}: theta = {:.2} deg", r.step, b.theta.to_degrees())
                })
        })
        .collect();
    Outcome {
        pass: off.is_empty(),
        detail: if off.is_empty() {
            "all bases within 1 deg of z".into()
        } else {
            format!("{} of {} bases off z, e.g. {}", off.len(), 2 * recs.len(), off[0])
        },
    }
}

fn analytic_anchors() -> Outcome {
    let cfg = OptimizerConfig::default();
    let bell = bell_phi_plus::<f64>(Ordering::SX);
    let copy = classical_copy::<f64>(Ordering::SX);
    let checks = [
        ("Bell H(S|X)", conditional_entropy(&bell).unwrap(), -1.0),
        ("Bell I", mutual_information(&bell).unwrap(), 2.0),
        ("Bell delta", discord(&bell, Party::X, &cfg).unwrap().discord, 1.0),
        ("copy I", mutual_information(&copy).unwrap(), 1.0),
        ("copy delta", discord(&copy, Party::X, &cfg).unwrap().discord, 0.0),
    ];
    let bad: Vec<_> = checks
        .iter()
        .filter(|(_, got, want)| (got - want).abs() >= 1e-9)
        .map(|(name, got, want)| format!("{name} = {got} (want {want})"))
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "5 anchors within 1e-9".into() } else { bad.join(", ") },
    }
}

fn oracle_equivalence() -> Outcome {
    let cfg = OptimizerConfig::default();
    let mut worst = 0.0f64;
    for rho in random_states(31, 50) {
        let m = sx_entries(&rho);
        let sx = discord(&rho, Party::X, &cfg).unwrap().discord;
        let xs = discord(&rho, Party::S, &cfg).unwrap().discord;
        worst = worst
            .max((sx - oracle::discord_s_given_x(&m)).abs())
            .max((xs - oracle::discord_x_given_s(&m)).abs());
    }
    Outcome {
        pass: worst < 1e-6,
        detail: format!("max |production - 0.1 deg grid| = {worst:.2e} bits over 50 states, both sides"),
    }
}

fn dynamics_properties() -> Outcome {
    let l = build_liouvillian(1.0, Ordering::SX).unwrap();
    let states = random_states(47, 20);
    let mut trace_err = 0.0f64;
    let mut semigroup = 0.0f64;
    for rho in &states {
        let a = propagate(rho, &l, 0.7).unwrap();
        let ab = propagate(&a, &l, 1.3).unwrap();
        let direct = propagate(rho, &l, 2.0).unwrap();
        trace_err = trace_err.max((a.matrix().trace().re - 1.0).abs());
        semigroup = semigroup.max(ab.matrix().max_abs_diff(direct.matrix()));
    }
    let update = lift_local(&update_channel(0.7).unwrap(), &[2, 2], Ordering::SX).unwrap();
    let mut x_state = 0.0f64;
    let mut rho: State = initial_state(Ordering::SX);
    for _ in 0..10 {
        rho = propagate(&rho, &l, 1.0).unwrap();
        x_state = x_state.max(x_state_defect(&rho));
        rho = apply(&update, &rho).unwrap();
        x_state = x_state.max(x_state_defect(&rho));
    }
    let late: DensityMatrix<f64> = propagate(&initial_state(Ordering::SX), &l, 50.0).unwrap();
    let conv = late.matrix().max_abs_diff(steady_state(&l).unwrap().matrix());
    Outcome {
        pass: trace_err < 1e-12 && semigroup < 1e-9 && x_state < 1e-10 && conv < 1e-7,
        detail: format!(
            "trace {trace_err:.1e}, semigroup {semigroup:.1e}, X-state {x_state:.1e}, \
             convergence at 50/kappa {conv:.1e}"
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("steady-state reproduction", Some(1), steady_state_reproduction),
        ("decoherence minimum equals discord", Some(60), decoherence_identity),
        ("data processing under local channels", Some(60), data_processing),
        ("lost-work signs and convergence", Some(30), figure_two_shape),
        ("minimizing basis is computational", None, minimizing_basis),
        ("analytic anchors", None, analytic_anchors),
        ("optimizer matches brute-force oracle", None, oracle_equivalence),
        ("dynamics properties", None, dynamics_properties),
    ];
    let mut failed = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let out = timed(budget.map(Duration::from_secs), check);
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {} {} {name}: {}",
            k + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
