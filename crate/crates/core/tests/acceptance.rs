//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use brickwork::cli::{cmd_sweep, RunConfig};
use brickwork::placement::closed_form_bases;
use brickwork::{
    best_placement, classify_zones, generate_bricks, l_optimal, pipeline, run_sweep,
    Configuration, Objective, Point2, RobotSpec, ScenarioGrid, SweepReport, TimeModel, WallSpec,
};
use common::*;

type Check = std::result::Result<String, String>;

const RANDOM_CASES: u64 = 100;

fn default_report() -> SweepReport {
    run_sweep(&ScenarioGrid::default(), &RobotSpec::default(), &TimeModel::default())
}

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn optimal_length() -> Check {
    let l = l_optimal(&RobotSpec::default()).map_err(|e| e.to_string())?;
    // chord of the outer radius at the inner-radius stand-off
    let oracle = 2.0 * (0.8f64 * 0.8 - 0.3 * 0.3).sqrt();
    ensure((l - 1.4832).abs() <= 0.005, format!("L_optimal = {l:.6}"))?;
    ensure((l - oracle).abs() <= 1e-12, format!("{l} vs {oracle}"))?;
    Ok(format!("L_optimal = {l:.6} m"))
}

fn closed_form_positions() -> Check {
    let l = 1.48;
    let r = 0.3;
    let straight = closed_form_bases(Point2::ORIGIN, l, r, 0.0, 3);
    let close = |p: Point2, x: f64, y: f64| (p.x - x).abs() <= 1e-9 && (p.y - y).abs() <= 1e-9;
    ensure(close(straight[0], 0.74, -0.30), format!("P1 = {:?}", straight[0]))?;
    ensure(close(straight[1], 2.22, 0.30), format!("P2 = {:?}", straight[1]))?;

    // Third base against the third piece of a wall turned by theta: the
    // piece runs from (2L, 0) along heading -theta.
    for deg in [0.0f64, 30.0, 90.0, -45.0] {
        let theta = deg.to_radians();
        let p3 = closed_form_bases(Point2::ORIGIN, l, r, theta, 3)[2];
        let (ax, ay) = (2.0 * l, 0.0);
        let (dx, dy) = (theta.cos(), -theta.sin());
        let perp = ((p3.x - ax) * dy - (p3.y - ay) * dx).abs();
        let along = (p3.x - ax) * dx + (p3.y - ay) * dy;
        ensure((perp - r).abs() <= 1e-9, format!("theta {deg}: perpendicular {perp}"))?;
        ensure((along - l / 2.0).abs() <= 1e-9, format!("theta {deg}: along {along}"))?;
    }
    Ok("P1 (0.74, -0.30), P2 (2.22, 0.30), P3 at r2 from its piece".into())
}

fn sweep_size_and_runtime() -> Check {
    let start = Instant::now();
    let report = default_report();
    let secs = start.elapsed().as_secs_f64();
    ensure(report.rows.len() == 78, format!("{} rows", report.rows.len()))?;
    ensure(secs < 10.0, format!("took {secs:.2} s"))?;
    Ok(format!("78 rows in {secs:.3} s"))
}

fn best_placement_matches() -> Check {
    let report = default_report();
    let best = best_placement(&report, Objective::Makespan).map_err(|e| e.to_string())?;
    ensure(
        (best.stand_off - 0.3).abs() < 1e-9,
        format!("best stand-off {}", best.stand_off),
    )?;
    ensure(
        [0.4, 0.5].iter().any(|o| (best.material_offset - o).abs() < 1e-9),
        format!("best offset {}", best.material_offset),
    )?;
    let mut cells = 0;
    for row in report.rows.iter().filter(|r| r.scenario.configuration == Configuration::ReadyFront01) {
        let s = row.scenario;
        let front = row.objective(Objective::Makespan).ok_or("front01 cell infeasible")?;
        for other in [Configuration::ReadyFront02, Configuration::ReadySide] {
            if let Some(v) = report
                .find(other, s.material_offset, s.stand_off)
                .and_then(|r| r.objective(Objective::Makespan))
            {
                cells += 1;
                ensure(front <= v, format!("{other} beats ReadyFront01 at {s:?}"))?;
            }
        }
    }
    Ok(format!(
        "offset {:.1} m, stand-off {:.1} m, {}; ReadyFront01 best in {cells} shared cells",
        best.material_offset, best.stand_off, best.configuration
    ))
}

fn stand_off_shape() -> Check {
    let report = default_report();
    let mut series: BTreeMap<(Configuration, String), Vec<(f64, f64)>> = BTreeMap::new();
    for row in &report.rows {
        let s = row.scenario;
        let v = row.objective(Objective::Makespan).ok_or(format!("{s:?} infeasible"))?;
        series
            .entry((s.configuration, format!("{:.3}", s.material_offset)))
            .or_default()
            .push((s.stand_off, v));
    }
    for ((c, o), mut pts) in series.clone() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let at = |d: f64| pts.iter().find(|p| (p.0 - d).abs() < 1e-9).map(|p| p.1);
        let (t2, t3) = (at(0.2).ok_or("missing 0.2")?, at(0.3).ok_or("missing 0.3")?);
        ensure(t2 > t3, format!("{c} offset {o}: T(0.2)={t2} <= T(0.3)={t3}"))?;
        let tail: Vec<f64> = pts.iter().filter(|p| p.0 >= 0.3 - 1e-9).map(|p| p.1).collect();
        for w in tail.windows(2) {
            ensure(w[0] <= w[1], format!("{c} offset {o}: decreasing tail {tail:?}"))?;
        }
    }
    Ok(format!("{} series: dip at 0.3, non-decreasing after", series.len()))
}

fn zones_match_oracle() -> Check {
    let mut rng = TestRng::seed_from_u64(0x20_6e);
    let mut bricks_checked = 0;
    for case in 0..RANDOM_CASES {
        let s = random_scenario(&mut rng);
        let plan = brickwork::PlacementPlan::build(&s.wall, &s.robot, s.robots)
            .map_err(|e| format!("case {case}: {e}"))?;
        let bricks = generate_bricks(&s.wall);
        let zones = classify_zones(&plan.bases, &bricks, &s.robot);
        let points: Vec<Point2> = plan.bases.iter().map(|b| b.position).collect();
        let oracle = brute_force_reachers(&points, &bricks, s.robot.workspace_radius);
        for b in &bricks {
            let got = zones.classes[&b.id].robots();
            ensure(got == oracle[&b.id], format!("case {case} brick {}: {got:?} vs {:?}", b.id, oracle[&b.id]))?;
        }
        bricks_checked += bricks.len();
    }
    Ok(format!("{RANDOM_CASES} scenarios, {bricks_checked} bricks, 0 mismatches"))
}

fn schedule_invariants() -> Check {
    let mut rng = TestRng::seed_from_u64(0x5c_ed);
    let mut actions = 0;
    for case in 0..RANDOM_CASES {
        let s = random_scenario(&mut rng);
        let run = pipeline::run(&s.wall, &s.robot, &s.model, s.robots)
            .map_err(|e| format!("case {case}: {e}"))?;
        if let Some(v) = mutual_exclusion_violation(&run.schedule) {
            return Err(format!("case {case}: {v}"));
        }

        let by_brick: BTreeMap<usize, _> = run.schedule.actions().map(|a| (a.brick_id, a)).collect();
        ensure(by_brick.len() == run.bricks.len(), format!("case {case}: bricks missing from schedule"))?;
        for (below, above) in brute_force_supports(&run.bricks) {
            let (a, b) = (by_brick[&below], by_brick[&above]);
            ensure(
                a.place_end <= b.pick_start + 1e-9,
                format!("case {case}: brick {above} starts before its support {below} is placed"),
            )?;
        }

        for (r, times) in run.result.per_robot.iter().enumerate() {
            let base = run.plan.bases[r].position;
            let depot = run.plan.depots[r].position;
            let expected: f64 = run.owners.bricks_of(r).iter().map(|id| {
                let target = run.bricks[*id].target_center;
                expected_action_time(
                    &s.model,
                    base,
                    depot,
                    s.robot.ready_reach,
                    target.plan(),
                    s.robot.stand_off,
                    s.robot.configuration,
                )
            }).sum();
            ensure(
                (times.busy - expected).abs() <= 1e-9 * expected.max(1.0),
                format!("case {case} robot {r}: busy {} vs {expected}", times.busy),
            )?;
        }
        actions += by_brick.len();
    }
    Ok(format!("{RANDOM_CASES} scenarios, {actions} actions: exclusion, precedence, work conserved"))
}

fn parallel_speedup() -> Check {
    let wall = WallSpec::straight(4.44, 0.30);
    let run = pipeline::run(&wall, &RobotSpec::default(), &TimeModel::default(), None)
        .map_err(|e| e.to_string())?;
    let r = &run.result;
    let n = run.plan.robots() as f64;
    let serial = r.serial_makespan();
    ensure(n == 3.0, format!("{n} robots"))?;
    ensure(r.t_total_sum / n <= r.makespan + 1e-9, format!("makespan {} below bound", r.makespan))?;
    ensure(r.makespan <= serial + 1e-9, format!("makespan {} above serial {serial}", r.makespan))?;
    let speedup = serial / r.makespan;
    ensure(speedup >= 1.5, format!("speedup {speedup:.3}"))?;
    Ok(format!("makespan {:.3} s, serial {serial:.3} s, speedup {speedup:.2}x", r.makespan))
}

fn sweep_is_reproducible() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        cmd_sweep(&RunConfig::new(&out)).map_err(|e| e.to_string())?;
        files.push(fs::read(out.join("sweep.csv")).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1], "sweep.csv differs between runs")?;
    Ok(format!("sweep.csv identical ({} bytes)", files[0].len()))
}

fn scale_invariance() -> Check {
    let grid = ScenarioGrid::default();
    let robot = RobotSpec::default();
    let base = best_placement(&run_sweep(&grid, &robot, &TimeModel::default()), Objective::Makespan)
        .map_err(|e| e.to_string())?;
    for k in [3.7, 0.25] {
        let scaled = best_placement(&run_sweep(&grid, &robot, &TimeModel::default().scaled(k)), Objective::Makespan)
            .map_err(|e| e.to_string())?;
        ensure(scaled == base, format!("k = {k}: {scaled:?} vs {base:?}"))?;
    }
    Ok("best triple unchanged at k = 3.7 and 0.25".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("optimal piece length", optimal_length),
        ("closed-form base positions", closed_form_positions),
        ("sweep size and runtime", sweep_size_and_runtime),
        ("best placement", best_placement_matches),
        ("stand-off response shape", stand_off_shape),
        ("zone classification oracle", zones_match_oracle),
        ("schedule invariants", schedule_invariants),
        ("parallel speedup", parallel_speedup),
        ("sweep reproducibility", sweep_is_reproducible),
        ("time-scale invariance", scale_invariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
