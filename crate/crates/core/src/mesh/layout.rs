use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::{compactify, rat, realize_1truss, Rational};
use crate::error::{Error, Result};
use crate::etcat::{EtObject, Kind};
use crate::ordinal::dual_delta_to_nabla;
use crate::poset::FinPoset;
use crate::tower::TrussTower;

pub type Point = (Rational, Rational);

/// A regular-over-regular stratum: a face of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub key: String,
    pub label: String,
    pub label_index: usize,
    pub outline: Vec<Point>,
}

/// A singular-over-regular stratum: a string of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wire {
    pub key: String,
    pub label: String,
    pub points: Vec<Point>,
}

/// A singular-over-singular stratum: a vertex of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub key: String,
    pub label: String,
    pub center: Point,
}

/// A string diagram in the square `[−1, 1]²`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scene {
    pub regions: Vec<Region>,
    pub wires: Vec<Wire>,
    pub nodes: Vec<Node>,
}

const NODE_RADIUS: u32 = 3;
const PALETTE: [&str; 8] = [
    "#f4e3c1", "#c9e4de", "#dbcdf0", "#f7d9c4", "#c6def1", "#faedcb", "#f2c6de", "#e2e2df",
];

fn svg_x(x: &Rational) -> f64 {
    (x + rat(1, 1)).to_f64().expect("finite") * 50.0
}

fn svg_y(y: &Rational) -> f64 {
    (rat(1, 1) - y).to_f64().expect("finite") * 50.0
}

fn coords(points: &[Point]) -> Vec<String> {
    points
        .iter()
        .map(|(x, y)| format!("{:.3},{:.3}", svg_x(x), svg_y(y)))
        .collect()
}

fn element_id(kind: &str, key: &str) -> String {
    let body: String = key
        .chars()
        .map(|c| match c {
            c if c.is_ascii_alphanumeric() => c,
            '@' => '.',
            '/' => '_',
            _ => '-',
        })
        .collect();
    format!("{kind}-{body}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl Scene {
    /// An SVG 1.1 document on a 100 × 100 viewport: regions, then wires,
    /// then nodes, each in total-poset order.
    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 100 100\" width=\"400\" height=\"400\">\n");
        s.push_str("<g id=\"regions\" stroke=\"none\">\n");
        for r in &self.regions {
            let pts = coords(&r.outline);
            let _ = writeln!(
                s,
                "<path id=\"{}\" d=\"M {} Z\" fill=\"{}\"><title>{}</title></path>",
                element_id("region", &r.key),
                pts.join(" L "),
                PALETTE[r.label_index % PALETTE.len()],
                escape(&r.label)
            );
        }
        s.push_str("</g>\n<g id=\"wires\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1\">\n");
        for w in &self.wires {
            let _ = writeln!(
                s,
                "<polyline id=\"{}\" points=\"{}\"><title>{}</title></polyline>",
                element_id("wire", &w.key),
                coords(&w.points).join(" "),
                escape(&w.label)
            );
        }
        s.push_str("</g>\n<g id=\"nodes\" fill=\"#222222\">\n");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "<circle id=\"{}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"{NODE_RADIUS}\"><title>{}</title></circle>",
                element_id("node", &n.key),
                svg_x(&n.center.0),
                svg_y(&n.center.1),
                escape(&n.label)
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

/// Lays out a 2-truss over the point as a string diagram. The vertical axis
/// realizes the first stage, horizontal positions realize the fibers of the
/// second, and sheets are interpolated linearly from each singular row to
/// the middle of the adjacent regular bands.
pub fn layout_2truss(t: &TrussTower) -> Result<Scene> {
    if t.depth() != 2 {
        return Err(Error::UnsupportedDepth {
            expected: "2".into(),
            found: t.depth(),
        });
    }
    if t.base().as_ref() != &FinPoset::point() {
        return Err(Error::Domain("layout needs a tower over the point".into()));
    }
    let n = t.diagram(0).ord(0).0;
    let rows = compactify(&realize_1truss(t.diagram(0).ord(0)));
    let c = rows.heights();
    let e1 = t.total(0);
    let d2 = t.diagram(1);
    let xs: Vec<Vec<Rational>> = d2
        .ords()
        .iter()
        .map(|&k| compactify(&realize_1truss(k)).heights().to_vec())
        .collect();
    let at = |kind: Kind, i: usize| {
        e1.index_of(0, &EtObject::new(kind, i, crate::ordinal::Ordinal(n)).expect("in range"))
            .expect("fiber element")
    };
    // compact sheet k of the fiber over band r_i, bottom to top
    let sheet = |i: usize, k: usize| -> Vec<Point> {
        let r = at(Kind::Regular, i);
        let mid = (&c[i] + &c[i + 1]) / rat(2, 1);
        let end = |row: Option<usize>, y: &Rational| -> Point {
            match row {
                None => (xs[r][k].clone(), y.clone()),
                Some(j) => {
                    let s = at(Kind::Singular, j);
                    let g = dual_delta_to_nabla(d2.arrow(s, r).expect("zigzag cover"));
                    (xs[s][g.apply(k)].clone(), y.clone())
                }
            }
        };
        vec![
            end(i.checked_sub(1), &c[i]),
            (xs[r][k].clone(), mid),
            end((i < n).then_some(i), &c[i + 1]),
        ]
    };
    let total = t.total(1);
    let top = total.carrier();
    let labels = t.labels();
    let names = t.category().objects();
    let mut scene = Scene::default();
    for (x, &(e, o)) in total.entries().iter().enumerate() {
        let (_, p) = e1.entry(e);
        let key = top.key(x).to_string();
        let label_index = labels.object(x);
        let label = names[label_index].clone();
        match (p.kind(), o.kind()) {
            (Kind::Regular, Kind::Regular) => {
                let mut outline = sheet(p.index(), o.index());
                outline.extend(sheet(p.index(), o.index() + 1).into_iter().rev());
                scene.regions.push(Region { key, label, label_index, outline });
            }
            (Kind::Regular, Kind::Singular) => {
                let points = sheet(p.index(), o.index() + 1);
                scene.wires.push(Wire { key, label, points });
            }
            (Kind::Singular, Kind::Singular) => {
                let center = (xs[e][o.index() + 1].clone(), c[p.index() + 1].clone());
                scene.nodes.push(Node { key, label, center });
            }
            (Kind::Singular, Kind::Regular) => {}
        }
    }
    Ok(scene)
}
