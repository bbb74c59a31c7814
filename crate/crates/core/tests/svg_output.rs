use ribbon_core::constructions::{build_74, build_odd_wrap, build_short_52};
use ribbon_core::formulas::quotient_table;
use ribbon_core::render::{render_table_figure, to_svg, RenderOptions};
use ribbon_core::{layout, Presentation};

const ALLOWED: [&str; 5] = ["svg", "path", "polygon", "circle", "line"];

fn elements(svg: &str) -> Vec<(String, Option<String>)> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    doc.descendants()
        .filter(|n| n.is_element())
        .map(|n| {
            (
                n.tag_name().name().to_string(),
                n.attribute("fill").map(str::to_string),
            )
        })
        .collect()
}

#[test]
fn heptagon_figure_is_well_formed() {
    let folded = layout(&build_odd_wrap(3, Presentation::Closed).unwrap()).unwrap();
    let options = RenderOptions {
        show_circumcircle: true,
        ..RenderOptions::default()
    };
    let svg = to_svg(&folded, &options).unwrap();
    let els = elements(&svg);
    assert!(els.iter().all(|(name, _)| ALLOWED.contains(&name.as_str())));
    let count = |tag: &str| els.iter().filter(|(n, _)| n == tag).count();
    assert_eq!(count("polygon"), 7);
    assert_eq!(count("circle"), 1);
    assert_eq!(count("line"), 7);
    assert_eq!(count("path"), 1);
    assert_eq!(els.len(), 1 + 7 + 1 + 7 + 1);
}

#[test]
fn polygons_have_four_vertices_and_follow_layer_order() {
    let folded = layout(&build_74().unwrap()).unwrap();
    let options = RenderOptions {
        epsilon_display: 0.02,
        show_creases: false,
        show_centerline: false,
        ..RenderOptions::default()
    };
    let svg = to_svg(&folded, &options).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let polygons: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polygon"))
        .collect();
    assert_eq!(polygons.len(), folded.panels.len());
    for p in &polygons {
        assert_eq!(p.attribute("points").unwrap().split(' ').count(), 4);
    }
    let mut layers: Vec<i64> = folded.panels.iter().map(|p| p.layer).collect();
    layers.sort();
    // Fill colours cycle with the layer, so document order must show the sorted layers' colours.
    let fills: Vec<_> = polygons
        .iter()
        .map(|p| p.attribute("fill").unwrap().to_string())
        .collect();
    let mut expected_runs = layers.clone();
    expected_runs.dedup();
    let mut runs = fills.clone();
    runs.dedup();
    assert_eq!(runs.len(), expected_runs.len());
}

#[test]
fn rendering_is_deterministic() {
    let folded = layout(&build_short_52(1e-3).unwrap()).unwrap();
    let options = RenderOptions {
        epsilon_display: 0.01,
        show_circumcircle: true,
        ..RenderOptions::default()
    };
    assert_eq!(
        to_svg(&folded, &options).unwrap(),
        to_svg(&folded, &options).unwrap()
    );
}

#[test]
fn quotient_chart_is_well_formed() {
    let rows = quotient_table(12, 25, false).unwrap();
    let svg = render_table_figure(&rows).unwrap();
    let els = elements(&svg);
    assert!(els.iter().all(|(name, _)| ALLOWED.contains(&name.as_str())));
    assert_eq!(
        els.iter().filter(|(n, _)| n == "circle").count(),
        rows.len()
    );
    let single = render_table_figure(&rows[..1]).unwrap();
    assert_eq!(
        elements(&single)
            .iter()
            .filter(|(n, _)| n == "circle")
            .count(),
        1
    );
}
