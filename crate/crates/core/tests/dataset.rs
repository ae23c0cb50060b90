use std::collections::BTreeMap;

use geovqa_core::answer::{Vocabulary, NO};
use geovqa_core::dataset::{
    assemble, assign_splits, audit_answers, build, read_dataset, split_conflicts, stats, tile_grid, write_dataset,
    Split,
};
use geovqa_core::geom::Rect;
use geovqa_core::ingest::ObjectCollection;
use geovqa_core::question::{
    ElementCatalog, GenerationProfile, QuestionType, QuestionTypeWeights, Scale, SourceExtent, TemplateTable,
};
use geovqa_core::synth::{synthetic_city, SynthConfig};

fn lr_city(objects: usize, seed: u64) -> ObjectCollection {
    let cfg = SynthConfig::new(Rect::new(0.0, 0.0, 7680.0, 7680.0), objects, seed, 40.0);
    ObjectCollection::new(synthetic_city(&cfg)).unwrap()
}

fn lr_profile(seed: u64) -> GenerationProfile {
    let mut p = GenerationProfile::for_scale(Scale::Low, seed);
    p.source_grid = [3, 3];
    p.split_fractions = BTreeMap::from([(Split::Train, 0.778), (Split::Val, 0.111), (Split::Test, 0.111)]);
    p
}

#[test]
fn nine_sources_split_seven_one_one() {
    let collection = lr_city(3000, 1);
    let out = build(
        &collection,
        &lr_profile(1),
        &ElementCatalog::default(),
        &TemplateTable::default(),
    )
    .unwrap();
    let mut per_split: BTreeMap<Split, usize> = BTreeMap::new();
    for s in out.manifest.splits.values() {
        *per_split.entry(*s).or_default() += 1;
    }
    assert_eq!(
        per_split,
        BTreeMap::from([(Split::Train, 7), (Split::Val, 1), (Split::Test, 1)])
    );
    assert!(split_conflicts(&out.triplets).is_empty());
    for t in &out.triplets {
        let tile = out.manifest.tiles.iter().find(|x| x.id == t.tile_id).unwrap();
        assert_eq!(Some(t.split), tile.split);
        assert_eq!(out.manifest.splits[&tile.source_id], t.split);
    }
}

#[test]
fn assignment_is_seeded() {
    let ids: Vec<String> = (0..20).map(|i| format!("s{i}")).collect();
    let f = BTreeMap::from([(Split::Train, 0.5), (Split::Test, 0.5)]);
    let a = assign_splits(&ids, &f, 1).unwrap();
    assert_eq!(a, assign_splits(&ids, &f, 1).unwrap());
    assert_ne!(a, assign_splits(&ids, &f, 2).unwrap());
}

#[test]
fn empty_collection_answers_absence() {
    let collection = ObjectCollection::new(Vec::new()).unwrap();
    let mut p = GenerationProfile::for_scale(Scale::High, 3);
    p.sources = vec![SourceExtent {
        id: "empty".into(),
        bounds: Rect::new(0.0, 0.0, 230.4, 76.8),
    }];
    p.qtype_weights = QuestionTypeWeights {
        count: 0.0,
        presence: 1.0,
        comparison: 0.0,
        area: 0.0,
        rural_urban: 0.0,
    };
    let out = build(&collection, &p, &ElementCatalog::default(), &TemplateTable::default()).unwrap();
    assert_eq!(out.triplets.len(), 300);
    assert!(out
        .triplets
        .iter()
        .all(|t| t.qtype == QuestionType::Presence && t.answer.as_str() == NO));
}

#[test]
fn triplet_count_and_one_rural_urban_per_tile() {
    let collection = lr_city(2000, 2);
    let p = lr_profile(2);
    let out = build(&collection, &p, &ElementCatalog::default(), &TemplateTable::default()).unwrap();
    assert_eq!(out.triplets.len(), out.manifest.tiles.len() * p.questions_per_image);
    let mut rural: BTreeMap<&str, usize> = BTreeMap::new();
    for t in &out.triplets {
        *rural.entry(&t.tile_id).or_default() += (t.qtype == QuestionType::RuralUrban) as usize;
    }
    assert!(rural.values().all(|&n| n == 1));
    let vocab = Vocabulary::for_scale(Scale::Low, p.max_count);
    assert!(out.triplets.iter().all(|t| vocab.contains(t.answer.as_str())));
}

#[test]
fn answers_survive_an_audit() {
    let collection = lr_city(2500, 3);
    let p = lr_profile(3);
    let catalog = ElementCatalog::default();
    let out = build(&collection, &p, &catalog, &TemplateTable::default()).unwrap();
    let bad = audit_answers(&collection, &out.manifest.tiles, &out.triplets, &p, &catalog).unwrap();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn high_resolution_counts_stay_in_vocabulary() {
    let cfg = SynthConfig::new(Rect::new(0.0, 0.0, 307.2, 307.2), 6000, 4, 3.0);
    let collection = ObjectCollection::new(synthetic_city(&cfg)).unwrap();
    let mut p = GenerationProfile::for_scale(Scale::High, 4);
    p.source_grid = [2, 2];
    p.split_fractions = BTreeMap::from([(Split::Train, 0.5), (Split::Test, 0.5)]);
    let out = build(&collection, &p, &ElementCatalog::default(), &TemplateTable::default()).unwrap();
    let vocab = Vocabulary::for_scale(Scale::High, p.max_count);
    assert!(!out.triplets.is_empty());
    for t in &out.triplets {
        assert!(vocab.contains(t.answer.as_str()), "{}: {}", t.question_id, t.answer);
        if t.qtype == QuestionType::Count {
            assert!(t.spec.measure.unwrap() <= 89);
        }
    }
}

#[test]
fn output_is_independent_of_pool_size() {
    let collection = lr_city(2000, 5);
    let p = lr_profile(5);
    let (catalog, templates) = (ElementCatalog::default(), TemplateTable::default());
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| build(&collection, &p, &catalog, &templates).unwrap().triplets)
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn file_round_trip_and_stats() {
    let collection = lr_city(1500, 6);
    let p = lr_profile(6);
    let (_, _, tiles) = geovqa_core::dataset::plan_tiles(&collection, &p).unwrap();
    let (triplets, report) = assemble(
        &collection,
        &tiles[..3],
        &p,
        &ElementCatalog::default(),
        &TemplateTable::default(),
    )
    .unwrap();
    assert_eq!(triplets.len(), 300);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    write_dataset(&triplets, &path).unwrap();
    assert_eq!(read_dataset(&path).unwrap(), triplets);
    assert_eq!(report, stats(&triplets));
    let total: u64 = report.answers.values().flat_map(|h| h.values()).sum();
    assert_eq!(total, report.n_triplets);
    let single = stats(&triplets[..1]);
    assert_eq!(single.answers[&triplets[0].qtype][triplets[0].answer.as_str()], 1);
}

#[test]
fn tiles_are_disjoint_and_cover() {
    let bounds = Rect::new(100.0, 200.0, 100.0 + 2560.0 * 3.0 + 10.0, 200.0 + 2560.0 * 2.0 + 5.0);
    let tiles = tile_grid("s", &bounds, 256, 10.0);
    assert_eq!(tiles.len(), 6);
    for (i, a) in tiles.iter().enumerate() {
        for b in &tiles[i + 1..] {
            let ox = (a.rect.max_x.min(b.rect.max_x) - a.rect.min_x.max(b.rect.min_x)).max(0.0);
            let oy = (a.rect.max_y.min(b.rect.max_y) - a.rect.min_y.max(b.rect.min_y)).max(0.0);
            assert_eq!(ox * oy, 0.0);
        }
    }
    let covered: f64 = tiles.iter().map(|t| t.rect.area()).sum();
    assert_eq!(covered, 6.0 * 2560.0 * 2560.0);
}
