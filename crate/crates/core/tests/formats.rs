use std::str::FromStr;

use geojson::{GeoJson, Value as Geometry};
use intcollab_core::corpus::{
    parse_records, write_delimited, write_tagged, CountryRegistry, DocType, Document, InputFormat, ParseMode, RawRecord,
};
use intcollab_core::counting::{build_incidence, fractional_counts, integer_counts};
use intcollab_core::export::{
    export_geo, export_pajek, export_vosviewer, read_pajek, write_pajek, NetFileModel, NetVertex, SizeAttr, SizeRule,
};
use intcollab_core::layout::{layout_graph, Layout, LayoutConfig, LayoutGraph};
use intcollab_core::network::{build_coauth_network, CoauthNetwork, Subnetwork};
use proptest::prelude::*;

fn small_network() -> CoauthNetwork {
    let docs = vec![
        Document::new("1", DocType::Article, [("CANADA", 2), ("SWEDEN", 1)]),
        Document::new("2", DocType::Review, [("CANADA", 1), ("SWEDEN", 1), ("NORWAY", 2)]),
        Document::new("3", DocType::Letter, [("NORWAY", 1)]),
        Document::new("4", DocType::Article, [("CANADA", 1)]),
    ];
    let m = build_incidence(&docs).unwrap();
    build_coauth_network(&m, &integer_counts(&m), &fractional_counts(&m)).unwrap()
}

#[test]
fn vosviewer_matches_hand_assembled_files() {
    let net = small_network();
    let sub = Subnetwork::full(&net);
    let layout = Layout {
        labels: vec!["CANADA".into(), "NORWAY".into(), "SWEDEN".into()],
        coordinates: vec![(-0.5, 0.0), (0.25, 0.125), (0.25, -0.125)],
        final_stress: 0.0,
        iterations_used: 0,
    };
    // CANADA 2/3 + 1/4 + 1, NORWAY 2/4 + 1, SWEDEN 1/3 + 1/4
    let frac = export_vosviewer(&sub, &layout, SizeAttr::FractionalPapers).unwrap();
    assert_eq!(
        frac.map,
        "id\tlabel\tx\ty\tweight\n\
         1\tCANADA\t-0.500000\t0.000000\t1.916667\n\
         2\tNORWAY\t0.250000\t0.125000\t1.500000\n\
         3\tSWEDEN\t0.250000\t-0.125000\t0.583333\n"
    );
    assert_eq!(frac.network, "1\t2\t1\n1\t3\t2\n2\t3\t1\n");
    let int = export_vosviewer(&sub, &layout, SizeAttr::IntegerPapers).unwrap();
    assert_eq!(
        int.map.lines().skip(1).map(|l| l.rsplit('\t').next().unwrap()).collect::<Vec<_>>(),
        ["3", "2", "2"]
    );
    let deg = export_vosviewer(&sub, &layout, SizeAttr::Degree).unwrap();
    assert!(deg.map.lines().skip(1).all(|l| l.ends_with("\t2")));
}

#[test]
fn vosviewer_ids_are_consistent() {
    let net = small_network();
    let sub = Subnetwork::full(&net);
    let layout = layout_graph(&LayoutGraph::from_subnetwork(&sub), &LayoutConfig::default()).unwrap();
    let files = export_vosviewer(&sub, &layout, SizeAttr::Degree).unwrap();
    let map_ids: std::collections::BTreeSet<&str> =
        files.map.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    let net_ids: std::collections::BTreeSet<&str> =
        files.network.lines().flat_map(|l| l.split('\t').take(2)).collect();
    assert!(net_ids.is_subset(&map_ids));
    assert_eq!(map_ids.len(), 3);
}

#[test]
fn geojson_validates_and_round_trips() {
    let net = small_network();
    let sub = Subnetwork::full(&net);
    let m = build_incidence(&[
        Document::new("1", DocType::Article, [("CANADA", 2), ("SWEDEN", 1)]),
        Document::new("2", DocType::Review, [("CANADA", 1), ("SWEDEN", 1), ("NORWAY", 2)]),
        Document::new("3", DocType::Letter, [("NORWAY", 1)]),
        Document::new("4", DocType::Article, [("CANADA", 1)]),
    ])
    .unwrap();
    let reg = CountryRegistry::bundled();
    for great_circle in [false, true] {
        let out = export_geo(&sub, &fractional_counts(&m), &reg, SizeRule::default(), great_circle).unwrap();
        let parsed = GeoJson::from_str(&out.geojson).unwrap();
        let GeoJson::FeatureCollection(fc) = &parsed else { panic!("not a collection") };
        assert_eq!(fc.features.len(), 3 + 3);
        let mut points = 0;
        for f in &fc.features {
            match &f.geometry.as_ref().unwrap().value {
                Geometry::Point(p) => {
                    points += 1;
                    let country = f.property("country").unwrap().as_str().unwrap();
                    let e = reg.entry(country).unwrap();
                    assert!((p[0] - e.longitude).abs() < 1e-6 && (p[1] - e.latitude).abs() < 1e-6);
                }
                Geometry::LineString(ls) => {
                    assert_eq!(ls.len(), if great_circle { 32 } else { 2 });
                    let label = f.property("label").unwrap().as_str().unwrap();
                    let a = reg.entry(f.property("country_a").unwrap().as_str().unwrap()).unwrap();
                    assert!((ls[0][0] - a.longitude).abs() < 1e-6 && (ls[0][1] - a.latitude).abs() < 1e-6);
                    assert!(label.contains('\u{2013}'));
                }
                other => panic!("unexpected geometry {other:?}"),
            }
        }
        assert_eq!(points, 3);
        let again = GeoJson::from_str(&parsed.to_string()).unwrap();
        assert_eq!(again, parsed);
        assert!(out.geojson.contains("\"label\": \"CANADA\u{2013}SWEDEN: 2\""));
    }
}

#[test]
fn pajek_fixture_round_trips() {
    let net = small_network();
    let sub = Subnetwork::full(&net);
    let layout = layout_graph(&LayoutGraph::from_subnetwork(&sub), &LayoutConfig::default()).unwrap();
    let text = export_pajek(&sub, Some(&layout)).unwrap();
    let model = read_pajek(&text).unwrap();
    assert_eq!(write_pajek(&model), text);
    assert_eq!(NetFileModel::from_subnetwork(&sub, Some(&layout)).unwrap().vertices.len(), 3);
    for v in &model.vertices {
        let (x, y, z) = v.coordinates.unwrap();
        assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) && z == 0.5);
    }
    assert_eq!(
        export_pajek(&sub, None).unwrap(),
        "*Vertices 3\n1 \"CANADA\"\n2 \"NORWAY\"\n3 \"SWEDEN\"\n*Edges\n1 2 1\n1 3 2\n2 3 1\n"
    );
}

fn label() -> impl Strategy<Value = String> {
    "[A-Za-z\" ]{0,5}[A-Za-z\"]"
}

fn model() -> impl Strategy<Value = NetFileModel> {
    (1usize..12, any::<bool>()).prop_flat_map(|(n, with_coords)| {
        let vertices = proptest::collection::vec((label(), 0.0f64..1.0, 0.0f64..1.0), n).prop_map(move |vs| {
            vs.into_iter()
                .map(|(label, x, y)| NetVertex {
                    label,
                    coordinates: with_coords.then_some((x, y, 0.5)),
                })
                .collect::<Vec<_>>()
        });
        let edges = proptest::collection::btree_map((1..=n, 1..=n), 1u32..500, 0..n * 2).prop_map(|m| {
            m.into_iter()
                .filter(|((a, b), _)| a < b)
                .map(|((a, b), w)| (a, b, w as f64))
                .collect::<Vec<_>>()
        });
        (vertices, edges).prop_map(|(vertices, edges)| NetFileModel { vertices, edges })
    })
}

fn record() -> impl Strategy<Value = RawRecord> {
    (
        "[A-Z]{3}:[0-9]{6}",
        prop::sample::select(vec!["Article", "Review", "Letter", "Editorial Material"]),
        proptest::option::of(1900i32..2100),
        proptest::collection::vec("[A-Z][A-Za-z0-9 ,]{0,20}[a-z]", 0..4),
        proptest::option::of("[A-Z][a-z ]{0,20}[a-z]"),
    )
        .prop_map(|(record_id, doc_type, pub_year, address_lines, title)| RawRecord {
            record_id,
            doc_type: doc_type.to_string(),
            pub_year,
            address_lines,
            title,
        })
}

proptest! {
    #[test]
    fn pajek_write_read_write_is_identity(m in model()) {
        let text = write_pajek(&m);
        let back = read_pajek(&text).unwrap();
        prop_assert_eq!(write_pajek(&back), text);
        prop_assert_eq!(back.vertices.iter().map(|v| &v.label).collect::<Vec<_>>(), m.vertices.iter().map(|v| &v.label).collect::<Vec<_>>());
        prop_assert_eq!(back.edges, m.edges);
    }

    #[test]
    fn tagged_records_round_trip(records in proptest::collection::vec(record(), 0..6)) {
        let mut buf = Vec::new();
        write_tagged(&records, &mut buf).unwrap();
        let out = parse_records(buf.as_slice(), InputFormat::TaggedField, "rt", ParseMode::Strict).unwrap();
        prop_assert_eq!(out.records, records);
    }

    #[test]
    fn delimited_records_round_trip(records in proptest::collection::vec(record(), 0..6)) {
        let records: Vec<RawRecord> = records.into_iter().map(|r| RawRecord { title: None, ..r }).collect();
        let mut buf = Vec::new();
        write_delimited(&records, &mut buf).unwrap();
        let out = parse_records(buf.as_slice(), InputFormat::Delimited, "rt", ParseMode::Strict).unwrap();
        prop_assert_eq!(out.records, records);
    }
}

proptest! {
    #[test]
    fn display_size_increases_above_clamp(a in 1.5f64..1e7, delta in 1e-3f64..1e6, s_min in -5.0f64..5.0, s_scale in 0.1f64..10.0) {
        let rule = SizeRule { s_min, s_scale };
        prop_assert!(intcollab_core::export::display_size(a + delta, rule) > intcollab_core::export::display_size(a, rule));
        prop_assert!(intcollab_core::export::display_size(a, rule) >= s_min);
    }
}
