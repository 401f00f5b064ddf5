//! SVG rendering of a two-point semigroup on a box. Maximal elements are
//! open circles, the other members are filled dots, α₁ grows rightward and
//! α₂ upward on a unit grid.

use std::fmt::Write as _;

use gws_core::{IntBox, IntTuple, Semigroup};

const UNIT: i64 = 24;
const RADIUS: i64 = 5;

pub fn render(sg: &Semigroup, window: &IntBox) -> String {
    let (x0, x1) = (window.lower()[0], window.upper()[0]);
    let (y0, y1) = (window.lower()[1], window.upper()[1]);
    let width = (x1 - x0 + 2) * UNIT;
    let height = (y1 - y0 + 2) * UNIT;
    let px = |x: i64| (x - x0 + 1) * UNIT;
    let py = |y: i64| (y1 - y + 1) * UNIT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(s, r##"<g class="grid" stroke="#dddddd" stroke-width="1">"##);
    for x in x0..=x1 {
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            px(x),
            py(y1),
            py(y0)
        );
    }
    for y in y0..=y1 {
        let _ = writeln!(
            s,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            py(y),
            px(x0),
            px(x1)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="axes" stroke="black" stroke-width="1.5">"#);
    if (x0..=x1).contains(&0) {
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            px(0),
            py(y1) - UNIT / 2,
            py(y0) + UNIT / 2
        );
    }
    if (y0..=y1).contains(&0) {
        let _ = writeln!(
            s,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            py(0),
            px(x0) - UNIT / 2,
            px(x1) + UNIT / 2
        );
    }
    let _ = writeln!(s, "</g>");

    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let a = IntTuple::from([x, y]);
            if !sg.member(&a) {
                continue;
            }
            let (class, fill) = if sg.is_maximal(&a) {
                ("maximal", "white")
            } else {
                ("member", "black")
            };
            let _ = writeln!(
                s,
                r#"<circle class="{class}" data-alpha="{x},{y}" cx="{}" cy="{}" r="{RADIUS}" fill="{fill}" stroke="black" stroke-width="1.5"/>"#,
                px(x),
                py(y)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
