//! Scripted sessions against recorded fixtures.

mod common;

use std::fs;

use atreya_core::dialog::{Phase, Topic};
use atreya_core::presenter::{ButtonGrid, Reply};

use common::{
    b, engine, engine_over, golden_dir, molecule_card_script, replay, run, t, walkthroughs, Counting, TEST_TOKEN,
};

fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "transcript differs from {}", path.display());
}

#[test]
fn molecule_card_walkthrough() {
    let engine = engine();
    let session = run(&engine, &molecule_card_script());
    let last = session.history().last().unwrap();
    let cards: Vec<_> = last
        .replies
        .iter()
        .filter_map(|r| match r {
            Reply::ImageCard { png, caption } => Some((png, caption)),
            _ => None,
        })
        .collect();
    assert!(!cards.is_empty());
    let (png, caption) = cards[0];
    assert!(png.starts_with(b"\x89PNG"));
    for needle in ["CHEMBL112", "PARACETAMOL", "C8H9NO2"] {
        assert!(caption.contains(needle));
    }
    assert_eq!(session.phase(), Phase::Results);
    check_golden("molecule-card.txt", &session.transcript());
}

#[test]
fn guideline_then_results_phases() {
    let engine = engine();
    let mut s = run(&engine, &[t("/start"), b("Molecule Info")]);
    assert_eq!(s.phase(), Phase::Guideline(Topic::Molecule));
    let replies = engine.handle_event(&mut s, t("mid/CHEMBL0")).unwrap();
    assert!(replies[0].body_text().contains("NotFound"));
    assert_eq!(s.phase(), Phase::Guideline(Topic::Molecule));
    let replies = engine.handle_event(&mut s, t("tgg/brd4")).unwrap();
    assert!(matches!(replies.last(), Some(Reply::Buttons { grid, .. }) if *grid == ButtonGrid::main_menu()));
    assert_eq!(s.phase(), Phase::Results);
}

#[test]
fn top50_delivers_csv() {
    let engine = engine();
    let s = run(&engine, &[t("/start"), t("top50")]);
    let replies = &s.history().last().unwrap().replies;
    let file = replies.iter().find_map(|r| match r {
        Reply::FileAttachment { filename, bytes, .. } => Some((filename, bytes)),
        _ => None,
    });
    let (name, bytes) = file.expect("csv attachment");
    assert_eq!(name, "approved_drugs.csv");
    assert_eq!(String::from_utf8_lossy(bytes).split_terminator("\r\n").count(), 51);
}

#[test]
fn large_result_sets_are_capped_with_a_note() {
    let engine = engine();
    let s = run(&engine, &[t("/start"), t("dis/asthma")]);
    let replies = &s.history().last().unwrap().replies;
    let cards = replies
        .iter()
        .filter(|r| matches!(r, Reply::ImageCard { .. }) || r.body_text().starts_with("ChEMBL ID:"))
        .count();
    assert_eq!(cards, 10);
    assert!(replies
        .iter()
        .any(|r| r.body_text().starts_with("Showing the first 10 of")));
}

#[test]
fn no_queries_before_start_succeeds() {
    let counting = Counting::new(replay());
    let engine = engine_over(counting.clone(), Some(TEST_TOKEN));
    let mut s = engine.create_session();
    for e in [t("msy/paracetamole"), t("top50"), b("Molecule Info"), t("hello")] {
        let replies = engine.handle_event(&mut s, e).unwrap();
        assert_eq!(replies.len(), 1);
    }
    assert_eq!(counting.total(), 0);
    assert_eq!(s.phase(), Phase::Created);
    engine.handle_event(&mut s, t("/start")).unwrap();
    assert_eq!(counting.queries(), 0);
    assert!(counting.total() > 0, "the liveness probe runs at /start");
    engine.handle_event(&mut s, t("msy/paracetamole")).unwrap();
    assert!(counting.queries() > 0);
}

#[test]
fn missing_credential_never_queries() {
    let counting = Counting::new(replay());
    let engine = engine_over(counting.clone(), None);
    let mut s = engine.create_session();
    for e in [t("/start"), t("msy/paracetamole"), t("/start")] {
        let replies = engine.handle_event(&mut s, e).unwrap();
        assert!(!replies.is_empty());
        assert_eq!(s.phase(), Phase::Created);
    }
    assert!(s.history().next().unwrap().replies[0]
        .body_text()
        .contains("Configuration error"));
    assert_eq!(counting.total(), 0);
}

#[test]
fn walkthroughs_are_deterministic() {
    for (name, events) in walkthroughs() {
        let first = run(&engine(), &events).transcript();
        let second = run(&engine(), &events).transcript();
        assert_eq!(first, second, "{name}");
        assert!(first.lines().count() > events.len(), "{name}");
    }
}

#[test]
fn exit_ends_every_walkthrough() {
    let engine = engine();
    for (name, events) in walkthroughs().into_iter().filter(|(n, _)| *n != "molecule-card") {
        let mut s = run(&engine, &events);
        assert!(s.is_ended(), "{name}");
        assert!(engine.handle_event(&mut s, t("/start")).is_err());
    }
}
