//! Rendering of recorded depictions and records into chat replies.

mod common;

use std::io::Cursor;

use atreya_core::presenter::{approved_csv, molecule_card, render_png, Reply, CSV_HEADER};

use common::{client, svg_fixtures};

fn dimensions(png: &[u8]) -> (u32, u32) {
    let reader = png::Decoder::new(Cursor::new(png)).read_info().expect("valid PNG");
    let info = reader.info();
    (info.width, info.height)
}

#[test]
fn every_fixture_svg_rasterizes_at_each_size() {
    let svgs = svg_fixtures();
    assert!(svgs.len() >= 20, "only {} SVG fixtures", svgs.len());
    for size in [64, 300, 500, 1024] {
        for (key, svg) in &svgs {
            let png = render_png(svg, size).unwrap_or_else(|e| panic!("{key}: {e}"));
            assert!(png.starts_with(b"\x89PNG\r\n\x1a\n"));
            let (w, h) = dimensions(&png);
            assert_eq!(w.max(h), size, "{key}");
        }
    }
}

#[test]
fn paracetamol_card_caption() {
    let c = client();
    let m = c.molecule_by_chembl_id("CHEMBL112").unwrap();
    let svg = c.fetch_depiction_svg("CHEMBL112").unwrap();
    let Reply::ImageCard { png, caption } = molecule_card(&m, Some(&svg), 500) else {
        panic!("expected an image card");
    };
    assert_eq!(dimensions(&png).0.max(dimensions(&png).1), 500);
    for needle in ["CHEMBL112", "PARACETAMOL", "C8H9NO2", "RZVAJINKPMORJF-UHFFFAOYSA-N"] {
        assert!(caption.contains(needle), "{needle} missing from {caption}");
    }
}

#[test]
fn broken_depiction_degrades_to_text() {
    let m = client().molecule_by_chembl_id("CHEMBL112").unwrap();
    let reply = molecule_card(&m, Some(b"<svg"), 500);
    assert!(matches!(&reply, Reply::Text(t) if t.contains("CHEMBL112")));
}

#[test]
fn top_fifty_csv_from_fixtures() {
    let top = client().top_approved_drugs(50).unwrap();
    let (doc, reply) = approved_csv(&top);
    assert_eq!(doc.header(), CSV_HEADER);
    assert_eq!(doc.rows().len(), 50);
    let Reply::FileAttachment { bytes, filename, .. } = reply else {
        panic!("expected a file");
    };
    assert_eq!(filename, "approved_drugs.csv");
    assert_eq!(bytes, doc.to_bytes());
    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.split_terminator("\r\n").count(), 51);
    for (row, m) in doc.rows().iter().zip(&top) {
        assert_eq!(row[0], m.chembl_id.as_str());
    }
}
