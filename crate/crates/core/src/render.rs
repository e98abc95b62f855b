//! Deterministic SVG output for boundary approximations, tile patches and
//! cut points. Geometry stays exact until the last formatting step.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::contact::{approx_boundary, build_contact_graph, derive_order_extension, polygon_is_simple, DEFAULT_WALK_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::Vec2;
use crate::neighbors::neighbor_set_formula;
use crate::numsys::point_eval;
use crate::scalar::Scalar;
use crate::topology::cut_point_address;
use crate::{RationalPoint, TileParams};

pub const DEFAULT_RENDER_LEVEL: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Style {
    pub fill: String,
    pub fill_opacity: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Marker {
    pub at: RationalPoint,
    pub label: String,
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]` in plane coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ViewBox {
    pub x0: BigRational,
    pub y0: BigRational,
    pub x1: BigRational,
    pub y1: BigRational,
}

impl ViewBox {
    pub fn contains(&self, p: &RationalPoint) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Scene {
    pub title: String,
    pub polygons: Vec<(Vec<RationalPoint>, Style)>,
    pub markers: Vec<Marker>,
}

impl Scene {
    /// Bounding box of all geometry, padded by 5% of its larger side.
    pub fn viewbox(&self) -> ViewBox {
        let pts = self.polygons.iter().flat_map(|(v, _)| v.iter()).chain(self.markers.iter().map(|m| &m.at));
        let mut b: Option<ViewBox> = None;
        for p in pts {
            b = Some(match b {
                None => ViewBox { x0: p.x.clone(), y0: p.y.clone(), x1: p.x.clone(), y1: p.y.clone() },
                Some(v) => ViewBox {
                    x0: v.x0.min(p.x.clone()),
                    y0: v.y0.min(p.y.clone()),
                    x1: v.x1.max(p.x.clone()),
                    y1: v.y1.max(p.y.clone()),
                },
            });
        }
        let one = BigRational::one();
        let mut b = b.unwrap_or(ViewBox { x0: -one.clone(), y0: -one.clone(), x1: one.clone(), y1: one });
        let side = (&b.x1 - &b.x0).max(&b.y1 - &b.y0);
        let pad = if side.is_zero() { BigRational::one() } else { side / BigRational::from_integer(20.into()) };
        b.x0 -= &pad;
        b.y0 -= &pad;
        b.x1 += &pad;
        b.y1 += &pad;
        b
    }

    pub fn to_svg(&self) -> String {
        let vb = self.viewbox();
        let (w, h) = (&vb.x1 - &vb.x0, &vb.y1 - &vb.y0);
        let stroke = w.clone().max(h.clone()) / BigRational::from_integer(400.into());
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        // y is flipped: the SVG box starts at −y1
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
            dec(&vb.x0),
            dec(&-vb.y1.clone()),
            dec(&w),
            dec(&h),
            (800.0 * h.as_f64() / w.as_f64()).round() as i64
        );
        let _ = writeln!(s, "<title>{}</title>", self.title);
        let _ = writeln!(s, "<g transform=\"scale(1,-1)\" stroke=\"#000000\" stroke-width=\"{}\" stroke-linejoin=\"round\">", dec(&stroke));
        for (poly, style) in &self.polygons {
            let mut d = String::new();
            for (k, p) in poly.iter().enumerate() {
                let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, dec(&p.x), dec(&p.y));
            }
            d.push_str(" Z");
            let _ = writeln!(s, "<path d=\"{d}\" fill=\"{}\" fill-opacity=\"{}\"/>", style.fill, style.fill_opacity);
        }
        let r = &stroke * BigRational::from_integer(4.into());
        for m in &self.markers {
            let _ = writeln!(
                s,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#d62728\" stroke=\"none\"><title>{}</title></circle>",
                dec(&m.at.x),
                dec(&m.at.y),
                dec(&r),
                m.label
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

/// Decimal with 12 significant digits, trailing zeros removed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    // scientific formatting fixes the significant digits exactly
    let e = format!("{:.11e}", x);
    let (mant, exp) = e.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let mut out = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg {
        out.insert(0, '-');
    }
    out
}

fn dec(x: &BigRational) -> String {
    format_sig12(x.as_f64())
}

/// Evenly spaced hues; `k` of `n`.
fn fill(k: usize, n: usize) -> String {
    let h = (360 * k / n.max(1)) as f64;
    let (s, l) = (0.55f64, 0.62f64);
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", to(r), to(g), to(b))
}

fn boundary_polygon(params: &TileParams, n: usize) -> Result<Vec<RationalPoint>> {
    let g = derive_order_extension(&build_contact_graph(params)?)?;
    let approx = approx_boundary(&g, n, DEFAULT_WALK_BUDGET)?;
    if !polygon_is_simple(&approx.vertices) {
        return Err(Error::IdentityFailure(format!("∂T_{n} of ({}, {}) is not a simple polygon", params.a, params.b)));
    }
    Ok(approx.vertices)
}

fn title(params: &TileParams, what: &str, n: usize) -> String {
    format!("A={} B={} {what} n={n}", params.a, params.b)
}

pub fn boundary_scene(params: &TileParams, n: usize) -> Result<Scene> {
    let poly = boundary_polygon(params, n)?;
    Ok(Scene {
        title: title(params, "boundary", n),
        polygons: vec![(poly, Style { fill: "#9ecae1".into(), fill_opacity: "0.6" })],
        markers: vec![],
    })
}

/// The level-`n` polygon and its translates by every neighbor.
pub fn patch_scene(params: &TileParams, n: usize) -> Result<Scene> {
    let poly = boundary_polygon(params, n)?;
    let nb = neighbor_set_formula(params)?;
    let total = nb.len() + 1;
    let mut polygons = vec![(poly.clone(), Style { fill: fill(0, total), fill_opacity: "0.8" })];
    for (k, s) in nb.members.iter().enumerate() {
        let t: RationalPoint = Vec2::from_ints(s.x(), s.y());
        polygons.push((poly.iter().map(|p| p + &t).collect(), Style { fill: fill(k + 1, total), fill_opacity: "0.8" }));
    }
    Ok(Scene { title: title(params, "patch", n), polygons, markers: vec![] })
}

pub fn cutpoint_scene(params: &TileParams, n: usize) -> Result<Scene> {
    let z = cut_point_address(params)?;
    let mut scene = boundary_scene(params, n)?;
    scene.title = title(params, "cut point", n);
    scene.markers.push(Marker { at: point_eval(&z, params), label: format!("z={}", z.to_overline_string()) });
    Ok(scene)
}

pub fn render_boundary(params: &TileParams, n: usize) -> Result<String> {
    Ok(boundary_scene(params, n)?.to_svg())
}

pub fn render_patch(params: &TileParams, n: usize) -> Result<String> {
    Ok(patch_scene(params, n)?.to_svg())
}

pub fn render_cutpoint(params: &TileParams, n: usize) -> Result<String> {
    Ok(cutpoint_scene(params, n)?.to_svg())
}
