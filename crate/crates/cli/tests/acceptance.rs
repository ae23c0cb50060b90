//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use geovqa_core::answer::{
    answer_count, quantize_count, select_objects, AnswerGroup, AnswerLabel, QuantizationScheme, TileScene, Vocabulary,
    NO, YES,
};
use geovqa_core::dataset::{build, read_dataset, split_conflicts, tile_grid, QATriplet, Split, TripletSpec};
use geovqa_core::eval::{score_with, Prediction};
use geovqa_core::geom::{classify_size, Rect, SizeClass, SizeProfile};
use geovqa_core::ingest::{GeoObject, ObjectCollection};
use geovqa_core::question::{
    generate_for_image, ElementCatalog, ElementSpec, GenerationProfile, QuestionSpec, QuestionType, Scale,
    SourceExtent, TemplateGrammar, TemplateTable,
};
use geovqa_core::synth::{synthetic_city, SynthConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn catalog() -> ElementCatalog {
    ElementCatalog::default()
}

fn templates() -> TemplateTable {
    TemplateTable::default()
}

fn quantization() -> Outcome {
    let start = Instant::now();
    let cases = [
        (0, "0"),
        (1, "between 1 and 10"),
        (10, "between 1 and 10"),
        (11, "between 11 and 100"),
        (100, "between 11 and 100"),
        (101, "between 101 and 1000"),
        (1000, "between 101 and 1000"),
        (1001, "more than 1000"),
        (17139, "more than 1000"),
    ];
    let scheme = QuantizationScheme::counts();
    for (n, want) in cases {
        let got = quantize_count(n, &scheme);
        check(got.as_str() == want, format!("{n} -> {got}, want {want}"))?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("9 boundary values in {took:?}"))
}

/// One dense urban tile next to four sparse rural tiles.
fn mixed_density_collection() -> ObjectCollection {
    let dense = synthetic_city(&SynthConfig::new(Rect::new(0.0, 0.0, 2560.0, 2560.0), 8000, 31, 40.0));
    let sparse = synthetic_city(&SynthConfig::new(
        Rect::new(2560.0, 0.0, 12800.0, 2560.0),
        400,
        32,
        40.0,
    ));
    let rename = |prefix: &'static str, objects: Vec<GeoObject>| {
        objects.into_iter().map(move |mut o| {
            o.id = format!("{prefix}-{}", o.id);
            o
        })
    };
    let objects = rename("d", dense).chain(rename("s", sparse)).collect();
    ObjectCollection::new(objects).unwrap()
}

fn closed_vocabulary() -> Outcome {
    let collection = mixed_density_collection();
    let mut p = GenerationProfile::for_scale(Scale::Low, 5);
    p.sources = vec![
        SourceExtent {
            id: "dense".into(),
            bounds: Rect::new(0.0, 0.0, 2560.0, 2560.0),
        },
        SourceExtent {
            id: "sparse".into(),
            bounds: Rect::new(2560.0, 0.0, 12800.0, 2560.0),
        },
    ];
    p.split_fractions = BTreeMap::from([(Split::Train, 0.5), (Split::Test, 0.5)]);
    let out = build(&collection, &p, &catalog(), &templates()).map_err(|e| e.to_string())?;
    let types: BTreeSet<QuestionType> = out.triplets.iter().map(|t| t.qtype).collect();
    check(
        types
            == BTreeSet::from([
                QuestionType::Count,
                QuestionType::Presence,
                QuestionType::Comparison,
                QuestionType::RuralUrban,
            ]),
        format!("question types {types:?}"),
    )?;
    let seen: BTreeSet<&str> = out.triplets.iter().map(|t| t.answer.as_str()).collect();
    let vocab = Vocabulary::for_scale(Scale::Low, p.max_count);
    let expected: BTreeSet<&str> = vocab.labels().iter().map(String::as_str).collect();
    check(seen == expected, format!("answers {seen:?}"))?;
    Ok(format!("{} answers over {} triplets", seen.len(), out.triplets.len()))
}

fn size_thresholds() -> Outcome {
    use SizeClass::*;
    let suites = [
        (
            SizeProfile::LOW_RESOLUTION,
            [(2999.0, Small), (3000.0, Medium), (9999.0, Medium), (10000.0, Large)],
        ),
        (
            SizeProfile::HIGH_RESOLUTION,
            [(99.0, Small), (100.0, Medium), (499.0, Medium), (500.0, Large)],
        ),
    ];
    for (profile, cases) in suites {
        for (a, want) in cases {
            let got = classify_size(a, &profile);
            check(got == want, format!("{a} m2 -> {got:?}, want {want:?}"))?;
        }
    }
    Ok("8 boundary areas".into())
}

fn tile_constants() -> Outcome {
    let lr = tile_grid("s", &Rect::new(0.0, 0.0, 2560.0, 2560.0), 256, 10.0);
    let hr = tile_grid("s", &Rect::new(0.0, 0.0, 76.8, 76.8), 512, 0.15);
    check(lr.len() == 1 && hr.len() == 1, "expected one tile per scale")?;
    // Square micrometres keep the arithmetic exact.
    check(
        lr[0].area_um2() == 6_553_600_000_000_000_000,
        format!("LR {} um2", lr[0].area_um2()),
    )?;
    check(
        hr[0].area_um2() == 5_898_240_000_000_000,
        format!("HR {} um2", hr[0].area_um2()),
    )?;
    Ok(format!("LR {} km2, HR {} m2", lr[0].area_m2() / 1e6, hr[0].area_m2()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let catalog = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let (mut checked, mut with_relation) = (0, 0);
    for scene_no in 0..100 {
        let n = rng.random_range(1..=50);
        let objects: Vec<GeoObject> = (0..n).map(|i| oracle::random_object(&mut rng, i)).collect();
        let refs: Vec<oracle::Reference> = objects.iter().map(oracle::reference).collect();
        let collection = ObjectCollection::new(objects.clone()).map_err(|e| e.to_string())?;
        let scene = TileScene::new(
            oracle::FOOTPRINT,
            collection.query_footprint(&oracle::FOOTPRINT),
            oracle::config(),
        );
        for _ in 0..30 {
            let spec = oracle::random_spec(&mut rng, true);
            let ours = select_objects(&scene, &spec, &catalog).map_err(|e| e.to_string())?;
            let ids: Vec<&str> = ours.iter().map(|o| o.id.as_str()).collect();
            let expected = oracle::oracle_select(&objects, &refs, &spec);
            check(ids == expected, format!("scene {scene_no}: {spec:?}"))?;
            check(
                answer_count(&ours) == expected.len() as u64,
                format!("count in scene {scene_no}"),
            )?;
            checked += 1;
            with_relation += spec.relation.is_some() as usize;
        }
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(30), format!("took {took:?}"))?;
    Ok(format!(
        "{checked} selections ({with_relation} with relations), 0 mismatches, {took:?}"
    ))
}

fn geovqa(args: &[OsString]) -> std::result::Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_geovqa"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn generate(out: &Path, workers: Option<&str>) -> std::result::Result<Vec<u8>, String> {
    let geo = fixtures().join("city_lr.geojson");
    let profile = fixtures().join("lr.toml");
    let mut args: Vec<OsString> = vec![
        "generate".into(),
        "--geo".into(),
        geo.into(),
        "--profile".into(),
        profile.into(),
        "--out".into(),
        out.into(),
    ];
    if let Some(w) = workers {
        args.extend(["--workers".into(), w.into()]);
    }
    geovqa(&args)?;
    std::fs::read(out.join("triplets.jsonl")).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs = [("a", None), ("b", None), ("w8", Some("8")), ("w1", Some("1"))];
    let mut outputs = Vec::new();
    for (name, workers) in runs {
        outputs.push(generate(&dir.path().join(name), workers)?);
    }
    check(!outputs[0].is_empty(), "empty triplet file")?;
    check(outputs[0] == outputs[1], "two identical runs differ")?;
    check(outputs[2] == outputs[3], "--workers 8 and --workers 1 differ")?;
    check(outputs[0] == outputs[2], "default and --workers 8 differ")?;
    Ok(format!("4 runs, {} identical bytes each", outputs[0].len()))
}

fn split_integrity() -> Outcome {
    // Any generated dataset: the CLI fixture run.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    generate(dir.path(), None)?;
    let triplets = read_dataset(dir.path().join("triplets.jsonl")).map_err(|e| e.to_string())?;
    let conflicts = split_conflicts(&triplets);
    check(conflicts.is_empty(), format!("sources in two splits: {conflicts:?}"))?;

    let cfg = SynthConfig::new(Rect::new(0.0, 0.0, 7680.0, 7680.0), 3000, 8, 40.0);
    let collection = ObjectCollection::new(synthetic_city(&cfg)).map_err(|e| e.to_string())?;
    let mut p = GenerationProfile::for_scale(Scale::Low, 8);
    p.sources.clear();
    p.source_grid = [3, 3];
    p.split_fractions = BTreeMap::from([(Split::Train, 0.778), (Split::Val, 0.111), (Split::Test, 0.111)]);
    let out = build(&collection, &p, &catalog(), &templates()).map_err(|e| e.to_string())?;
    check(split_conflicts(&out.triplets).is_empty(), "9-source build mixes splits")?;
    let mut realized: BTreeMap<Split, usize> = BTreeMap::new();
    for s in out.manifest.splits.values() {
        *realized.entry(*s).or_default() += 1;
    }
    let want = BTreeMap::from([(Split::Train, 7), (Split::Val, 1), (Split::Test, 1)]);
    check(realized == want, format!("realized {realized:?}"))?;
    Ok("no shared sources; 9 sources split 7/1/1".into())
}

fn triplet(i: usize, qtype: QuestionType, answer: &str) -> QATriplet {
    QATriplet {
        question_id: format!("t/q{i}"),
        tile_id: "t".into(),
        qtype,
        question: String::new(),
        answer: AnswerLabel::new(answer),
        split: Split::Test,
        spec: TripletSpec {
            question: QuestionSpec {
                qtype,
                element: (qtype != QuestionType::RuralUrban).then(|| ElementSpec::new("road")),
                comparison_op: None,
                second_element: None,
                template_id: 0,
                text: String::new(),
            },
            measure: None,
        },
    }
}

fn metrics_fixtures() -> Outcome {
    let vocab = Vocabulary::for_scale(Scale::Low, 89);
    let mut truth = Vec::new();
    let mut preds = Vec::new();
    for i in 0..40 {
        let (qtype, answer, guess) = if i < 10 {
            (QuestionType::Presence, YES, if i < 5 { YES } else { NO })
        } else {
            (QuestionType::Count, "between 11 and 100", "between 11 and 100")
        };
        truth.push(triplet(i, qtype, answer));
        preds.push(Prediction {
            question_id: format!("t/q{i}"),
            answer: guess.into(),
        });
    }
    let r = score_with(&preds, &truth, &vocab).map_err(|e| e.to_string())?;
    check(r.aa == 0.75 && r.oa == 0.875, format!("AA {} OA {}", r.aa, r.oa))?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let types = [
        QuestionType::Count,
        QuestionType::Presence,
        QuestionType::Comparison,
        QuestionType::RuralUrban,
    ];
    for round in 0..10 {
        let mut truth = Vec::new();
        let mut random = Vec::new();
        let mut logical = Vec::new();
        for i in 0..3000 {
            let qtype = types[rng.random_range(0..4)];
            let group = vocab.group_labels(AnswerGroup::of(qtype));
            let answer = &group[rng.random_range(0..group.len())];
            truth.push(triplet(i, qtype, answer));
            let any = &vocab.labels()[rng.random_range(0..vocab.len())];
            random.push(Prediction {
                question_id: format!("t/q{i}"),
                answer: any.clone(),
            });
            logical.push(Prediction {
                question_id: format!("t/q{i}"),
                answer: group[rng.random_range(0..group.len())].clone(),
            });
        }
        let r = score_with(&random, &truth, &vocab).map_err(|e| e.to_string())?;
        let ratio = r.confusion_trace() as f64 / r.n_scored as f64;
        check(ratio == r.oa, format!("round {round}: trace/n {ratio} vs OA {}", r.oa))?;
        let r = score_with(&logical, &truth, &vocab).map_err(|e| e.to_string())?;
        check(
            r.illogical_count == 0,
            format!("round {round}: {} illogical", r.illogical_count),
        )?;
    }
    Ok("AA 0.75, OA 0.875; trace/n = OA on 10 random sets; 0 illogical".into())
}

fn template_round_trip() -> Outcome {
    let catalog = catalog();
    let templates = templates();
    let grammar = TemplateGrammar::new(&templates, &catalog);
    let mut total = 0;
    let mut failures = 0;
    for scale in [Scale::Low, Scale::High] {
        let p = GenerationProfile::for_scale(scale, 77);
        for tile in 0..500 {
            let specs = generate_for_image(&format!("rt{tile}"), &p, &catalog, &templates, |_| true)
                .map_err(|e| e.to_string())?;
            for spec in specs {
                total += 1;
                if grammar.parse(&spec.text).as_ref() != Some(&spec) {
                    failures += 1;
                }
            }
        }
    }
    check(total == 100_000, format!("{total} questions"))?;
    check(failures == 0, format!("{failures} failures"))?;
    Ok(format!("{total} questions, 0 failures"))
}

fn throughput() -> Outcome {
    // 40 x 25 tiles of 2560 m, cut into 4 x 5 sources of 10 x 5 tiles.
    let bounds = Rect::new(0.0, 0.0, 102_400.0, 64_000.0);
    let collection =
        ObjectCollection::new(synthetic_city(&SynthConfig::new(bounds, 50_000, 9, 40.0))).map_err(|e| e.to_string())?;
    let mut p = GenerationProfile::for_scale(Scale::Low, 9);
    p.sources.clear();
    p.source_grid = [4, 5];
    let start = Instant::now();
    let out = build(&collection, &p, &catalog(), &templates()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    check(
        out.manifest.tiles.len() == 1000,
        format!("{} tiles", out.manifest.tiles.len()),
    )?;
    check(
        out.triplets.len() == 100_000,
        format!("{} questions", out.triplets.len()),
    )?;

    // Every tenth footprint keeps the linear reference affordable.
    let footprints: Vec<Rect> = out.manifest.tiles.iter().step_by(10).map(|t| t.rect).collect();
    let start = Instant::now();
    let indexed: usize = footprints.iter().map(|f| collection.query_footprint(f).len()).sum();
    let t_index = start.elapsed();
    let start = Instant::now();
    let linear: usize = footprints
        .iter()
        .map(|f| collection.query_footprint_linear(f).len())
        .sum();
    let t_linear = start.elapsed();
    check(indexed == linear, "index and linear scan disagree")?;
    let speedup = t_linear.as_secs_f64() / t_index.as_secs_f64().max(1e-9);
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let detail = format!(
        "{} questions in {took:.2?} on {cores} core(s); index {t_index:.2?} vs linear {t_linear:.2?} ({speedup:.0}x)",
        out.triplets.len()
    );
    check(took < Duration::from_secs(60), format!("too slow: {detail}"))?;
    check(speedup >= 10.0, format!("index speedup too small: {detail}"))?;
    Ok(detail)
}

fn rural_urban_once() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    generate(dir.path(), None)?;
    let mut triplets = read_dataset(dir.path().join("triplets.jsonl")).map_err(|e| e.to_string())?;
    let cfg = SynthConfig::new(Rect::new(0.0, 0.0, 12_800.0, 7680.0), 6000, 12, 40.0);
    let collection = ObjectCollection::new(synthetic_city(&cfg)).map_err(|e| e.to_string())?;
    let mut p = GenerationProfile::for_scale(Scale::Low, 12);
    p.sources.clear();
    p.source_grid = [5, 3];
    triplets.extend(
        build(&collection, &p, &catalog(), &templates())
            .map_err(|e| e.to_string())?
            .triplets,
    );
    let mut per_tile: BTreeMap<&str, usize> = BTreeMap::new();
    for t in &triplets {
        *per_tile.entry(&t.tile_id).or_default() += (t.qtype == QuestionType::RuralUrban) as usize;
    }
    let bad: Vec<_> = per_tile.iter().filter(|(_, &n)| n != 1).collect();
    check(bad.is_empty(), format!("tiles without exactly one: {bad:?}"))?;
    Ok(format!("{} LR tiles", per_tile.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("quantization exactness", quantization),
        ("closed LR vocabulary", closed_vocabulary),
        ("size thresholds", size_thresholds),
        ("tile footprint constants", tile_constants),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
        ("split integrity", split_integrity),
        ("metrics fixtures", metrics_fixtures),
        ("template round-trip", template_round_trip),
        ("throughput", throughput),
        ("single rural/urban question per LR tile", rural_urban_once),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
