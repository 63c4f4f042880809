//! Acceptance gate: one PASS/FAIL line per criterion, then fails if any did.
//!
//! cargo test -p placement-cli --test acceptance -- --nocapture

mod common;

use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::fixture::{worked_candidates, worked_profiles};
use common::instances::{random_instance, specs_for};
use common::oracle::{evaluate, to_f64};
use common::{Cli, MINA_CSV_ROW, SCOPE, WORKED};
use placement_core::criteria::find_rule;
use placement_core::registry::CANDIDATES_FILE;
use placement_core::{
    build_matrix, default_criteria, normalize, preference_scores, rank, round_display, run_selection, CriterionKind,
    DecisionMatrix, EducationLevel, Error, PsychResult, RawValue, Registry, WeightLabel,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const CRISP: [[f64; 4]; 5] = [
    [1.00, 0.25, 1.00, 0.00],
    [0.50, 0.00, 1.00, 0.25],
    [0.75, 0.25, 1.00, 0.25],
    [1.00, 0.25, 1.00, 0.25],
    [0.75, 0.50, 1.00, 0.50],
];

const NORMALIZED: [[f64; 4]; 5] = [
    [1.00, 0.50, 1.00, 0.00],
    [0.50, 0.00, 1.00, 0.50],
    [0.75, 0.50, 1.00, 0.50],
    [1.00, 0.50, 1.00, 0.50],
    [0.75, 1.00, 1.00, 1.00],
];

fn crisp_golden() {
    let start = Instant::now();
    let x = build_matrix(&worked_profiles(), &default_criteria()).unwrap();
    assert_eq!(x.alternative_ids, [1, 2, 3, 4, 5]);
    assert_eq!(x.values, CRISP.map(|r| r.to_vec()));
    assert!(start.elapsed() < Duration::from_secs(1));
}

fn normalized_golden() {
    let c = default_criteria();
    let r = normalize(&build_matrix(&worked_profiles(), &c).unwrap(), &c).unwrap();
    for (i, (got, want)) in r.values.iter().zip(NORMALIZED).enumerate() {
        for (j, (g, w)) in got.iter().zip(want).enumerate() {
            assert!((g - w).abs() <= 1e-12, "r[{i}][{j}] = {g}, want {w}");
        }
    }
}

fn preference_golden() {
    let out = run_selection(&worked_profiles(), &default_criteria()).unwrap();
    let names = ["TERE", "yeli", "mona", "DEDE", "MINA"];
    let order: Vec<(&str, u32)> = out.ranking.iter().map(|r| (names[r.candidate_id as usize - 1], r.rank)).collect();
    assert_eq!(order, [("MINA", 1), ("DEDE", 2), ("mona", 3), ("TERE", 4), ("yeli", 5)]);
    for (r, want) in out.ranking.iter().zip([2.875, 2.25, 2.125, 1.875, 1.625]) {
        assert!((r.preference_value - want).abs() <= 1e-12);
    }
    let shown: Vec<String> = out.ranking.iter().map(|r| round_display(r.preference_value)).collect();
    assert_eq!(shown, ["2.88", "2.25", "2.13", "1.88", "1.63"]);
}

fn engine(inst: &common::oracle::Instance) -> (Vec<Vec<f64>>, Vec<placement_core::RankedResult>) {
    let criteria = specs_for(inst);
    let x = DecisionMatrix::new(
        inst.ids.clone(),
        criteria.iter().map(|c| c.code.clone()).collect(),
        inst.values.clone(),
    )
    .unwrap();
    let r = normalize(&x, &criteria).unwrap();
    let ranked = rank(preference_scores(&r, &criteria).unwrap());
    (r.values, ranked)
}

fn oracle_equivalence() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_0001);
    let mut mixed = 0;
    for case in 0..1000 {
        let inst = random_instance(&mut rng, 6, 5);
        mixed += (inst.benefit.contains(&true) && inst.benefit.contains(&false)) as u32;
        let (_, ranked) = engine(&inst);
        for row in evaluate(&inst) {
            let got = ranked.iter().find(|g| g.candidate_id == row.id).unwrap();
            assert!((got.preference_value - to_f64(&row.v)).abs() <= 1e-12, "case {case}: V of {}", row.id);
            assert_eq!(got.rank, row.rank, "case {case}: rank of {}", row.id);
        }
    }
    assert!(mixed > 300, "only {mixed} instances mixed benefit and cost");
    assert!(start.elapsed() < Duration::from_secs(30));
}

fn property_suite() {
    let mut rng = StdRng::seed_from_u64(0xacce_0002);
    for case in 0..500 {
        let inst = random_instance(&mut rng, 6, 5);
        let wsum: f64 = inst.weights.iter().sum();
        let (r, ranked) = engine(&inst);

        // bounds
        assert!(r.iter().flatten().all(|v| (0.0..=1.0).contains(v)), "case {case}: bounds");
        // V ≤ Σw
        assert!(ranked.iter().all(|g| g.preference_value <= wsum + 1e-12), "case {case}: V ≤ Σw");
        // ranks are a permutation of 1..=m
        let mut ranks: Vec<u32> = ranked.iter().map(|g| g.rank).collect();
        ranks.sort();
        assert_eq!(ranks, (1..=inst.ids.len() as u32).collect::<Vec<_>>());

        // benefit column scaled by a power of two: bitwise identical
        if let Some(j) = inst.benefit.iter().position(|&b| b) {
            let mut scaled = inst.values.clone();
            let c = [0.5, 2.0, 4.0, 8.0][rng.gen_range(0..4)];
            scaled.iter_mut().for_each(|row| row[j] *= c);
            let (r2, ranked2) = engine(&common::oracle::Instance { values: scaled, ..clone(&inst) });
            assert_eq!(bits(&r), bits(&r2), "case {case}: scale invariance");
            assert_eq!(ranked, ranked2);

            // raising one benefit entry never lowers that alternative's V
            let i = rng.gen_range(0..inst.ids.len());
            let mut raised = inst.values.clone();
            raised[i][j] += 0.25;
            let (_, ranked3) = engine(&common::oracle::Instance { values: raised, ..clone(&inst) });
            let v = |rs: &[placement_core::RankedResult]| {
                rs.iter().find(|g| g.candidate_id == inst.ids[i]).unwrap().preference_value
            };
            assert!(v(&ranked3) >= v(&ranked) - 1e-12, "case {case}: monotonicity");
        }

        // permuting alternatives permutes the output
        let mut order: Vec<usize> = (0..inst.ids.len()).collect();
        order.shuffle(&mut rng);
        let shuffled = common::oracle::Instance {
            ids: order.iter().map(|&k| inst.ids[k]).collect(),
            values: order.iter().map(|&k| inst.values[k].clone()).collect(),
            ..clone(&inst)
        };
        let (_, ranked4) = engine(&shuffled);
        assert_eq!(ranked, ranked4, "case {case}: permutation equivariance");
    }

    // crisp tables are total over the eligible ranges
    let c = default_criteria();
    assert!(c.iter().all(|s| s.kind == CriterionKind::Benefit));
    for age in 18..=35 {
        assert!(find_rule(&RawValue::Number(age), &c[0].crisp_map).is_some(), "age {age}");
    }
    for years in 0..=50 {
        assert!(find_rule(&RawValue::Number(years), &c[3].crisp_map).is_some(), "experience {years}");
    }
    for e in EducationLevel::ALL {
        assert!(find_rule(&e.into(), &c[1].crisp_map).is_some());
    }
    for p in [PsychResult::Recommended, PsychResult::NotYetRecommended] {
        assert!(find_rule(&p.into(), &c[2].crisp_map).is_some());
    }

    // weight labels strictly increase
    let w: Vec<f64> = WeightLabel::ALL.iter().map(|l| l.weight()).collect();
    assert!(w.windows(2).all(|p| p[0] < p[1]), "{w:?}");
}

fn clone(inst: &common::oracle::Instance) -> common::oracle::Instance {
    common::oracle::Instance {
        ids: inst.ids.clone(),
        benefit: inst.benefit.clone(),
        weights: inst.weights.clone(),
        values: inst.values.clone(),
    }
}

fn bits(m: &[Vec<f64>]) -> Vec<u64> {
    m.iter().flatten().map(|v| v.to_bits()).collect()
}

fn registry() {
    // duplicate: CLI exit 2
    let cli = Cli::seeded();
    assert_eq!(cli.add(WORKED[4]).status.code(), Some(2));

    // duplicate: HTTP 409
    let dir = tempfile::tempdir().unwrap();
    let state = placement_service::AppState::new(Registry::open(dir.path()).unwrap(), Ok(default_criteria()));
    let app = placement_service::router(state, None);
    let (record, profile) = worked_candidates().remove(0);
    let body = serde_json::to_string(&placement_service::CandidateInput { record, profile }).unwrap();
    let rt = tokio::runtime::Runtime::new().unwrap();
    let statuses: Vec<u16> = (0..2)
        .map(|_| {
            use tower::ServiceExt;
            let req = axum::http::Request::post("/candidates")
                .header("content-type", "application/json")
                .body(axum::body::Body::from(body.clone()))
                .unwrap();
            rt.block_on(app.clone().oneshot(req)).unwrap().status().as_u16()
        })
        .collect();
    assert_eq!(statuses, [201, 409]);

    // save/load round trip is bitwise
    let path = cli.data().join(CANDIDATES_FILE);
    let bytes = fs::read(&path).unwrap();
    let reg = Registry::open(cli.data()).unwrap();
    assert_eq!(reg.all().len(), 5);
    placement_core::store::write_jsonl(&path, reg.all()).unwrap();
    assert_eq!(fs::read(&path).unwrap(), bytes);

    // interrupted write leaves the prior file readable
    let mut stray = tempfile::NamedTempFile::new_in(cli.data()).unwrap();
    stray.write_all(&bytes[..bytes.len() / 3]).unwrap();
    stray.keep().unwrap();
    let res = placement_core::store::atomic_write_with(&path, |w| {
        w.write_all(b"{\"id\": 6, \"full_na")?;
        Err(std::io::Error::other("simulated crash"))
    });
    assert!(res.is_err());
    assert_eq!(fs::read(&path).unwrap(), bytes);
    assert_eq!(Registry::open(cli.data()).unwrap().all(), reg.all());
    let list = cli.ok(&["--format", "json", "list"]);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&list).unwrap().as_array().unwrap().len(), 5);
    assert!(matches!(
        Registry::open(cli.data()).unwrap().add(worked_candidates().remove(1).0, worked_candidates().remove(1).1),
        Err(Error::DuplicateCandidate { existing: 2 })
    ));
}

fn cli_end_to_end() {
    let cli = Cli::seeded();
    let mut args = vec!["rank"];
    args.extend(SCOPE);
    cli.ok(&args);
    let csv = cli.ok(&["--format", "csv", "report"]);
    assert!(csv.lines().any(|l| l == MINA_CSV_ROW), "{csv}");
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 7] = [
        ("golden crisp matrix", crisp_golden),
        ("golden normalized matrix", normalized_golden),
        ("golden preference values, ranks and display", preference_golden),
        ("oracle equivalence, 1000 random instances", oracle_equivalence),
        ("property suite", property_suite),
        ("registry: duplicate, round trip, interrupted write", registry),
        ("CLI end to end: add x5, rank, CSV report", cli_end_to_end),
    ];
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS {}. {name} ({ms} ms)", i + 1),
            Err(e) => {
                let why = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {}. {name} ({ms} ms): {why}", i + 1);
                failed.push(*name);
            }
        }
    }
    panic::set_hook(hook);
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    assert!(failed.is_empty(), "failed: {failed:?}");
}
