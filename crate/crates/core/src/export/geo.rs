//! Geographic map artifacts: a GeoJSON FeatureCollection plus point and track
//! CSVs in the layout accepted by GPS Visualizer's generic data form.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{csv_field, fmt6, quoted, round6};
use crate::corpus::CountryRegistry;
use crate::counting::CountVector;
use crate::error::{Error, Result};
use crate::network::Subnetwork;
use crate::numeric::{format_decimal, to_f64};

/// Points per link when links follow great circles.
pub const GREAT_CIRCLE_POINTS: usize = 32;

/// `display_size = s_min + s_scale * ln(max(fractional_papers, 1.5))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SizeRule {
    pub s_min: f64,
    pub s_scale: f64,
}

impl Default for SizeRule {
    fn default() -> Self {
        SizeRule {
            s_min: 0.0,
            s_scale: 1.0,
        }
    }
}

pub fn display_size(fractional_papers: f64, rule: SizeRule) -> f64 {
    rule.s_min + rule.s_scale * fractional_papers.max(1.5).ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeoNode {
    pub country: String,
    pub iso3: String,
    pub latitude: f64,
    pub longitude: f64,
    /// Rendered with one decimal, e.g. `227.9`.
    pub fractional_papers: String,
    pub display_size: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeoLink {
    pub country_a: String,
    pub country_b: String,
    pub weight: u64,
    pub label: String,
    /// `(latitude, longitude)` vertices of the drawn line.
    pub path: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeoMapSpec {
    pub nodes: Vec<GeoNode>,
    pub links: Vec<GeoLink>,
    /// Link labels, heaviest link first (ties by label).
    pub legend: Vec<String>,
    pub size_rule: SizeRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoExport {
    pub geojson: String,
    pub nodes_csv: String,
    pub links_csv: String,
}

pub fn link_label(a: &str, b: &str, weight: u64) -> String {
    format!("{a}\u{2013}{b}: {weight}")
}

pub fn geo_map_spec(
    sub: &Subnetwork<'_>,
    counts_frac: &CountVector,
    registry: &CountryRegistry,
    rule: SizeRule,
    great_circle: bool,
) -> Result<GeoMapSpec> {
    let parent = sub.parent();
    let mut nodes = Vec::with_capacity(sub.n_nodes());
    for &i in sub.nodes() {
        let country = parent.node(i).country.as_str();
        let entry = registry
            .entry(country)
            .ok_or_else(|| Error::MissingCentroid(country.to_string()))?;
        let frac = counts_frac
            .get(country)
            .ok_or_else(|| Error::UnknownCountry(country.to_string()))?;
        nodes.push(GeoNode {
            country: country.to_string(),
            iso3: entry.iso3.clone(),
            latitude: entry.latitude,
            longitude: entry.longitude,
            fractional_papers: format_decimal(frac, 1),
            display_size: display_size(to_f64(frac), rule),
        });
    }
    let position = |i: usize| {
        let e = registry.entry(parent.node(i).country.as_str()).expect("checked above");
        (e.latitude, e.longitude)
    };
    let links: Vec<GeoLink> = sub
        .edges()
        .iter()
        .map(|&(a, b, w)| {
            let (ca, cb) = (parent.node(a).country.as_str(), parent.node(b).country.as_str());
            let path = if great_circle {
                great_circle_path(position(a), position(b), GREAT_CIRCLE_POINTS)
            } else {
                vec![position(a), position(b)]
            };
            GeoLink {
                country_a: ca.to_string(),
                country_b: cb.to_string(),
                weight: w,
                label: link_label(ca, cb, w),
                path,
            }
        })
        .collect();
    let mut legend: Vec<(u64, String)> = links.iter().map(|l| (l.weight, l.label.clone())).collect();
    legend.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    Ok(GeoMapSpec {
        nodes,
        links,
        legend: legend.into_iter().map(|(_, l)| l).collect(),
        size_rule: rule,
    })
}

/// Spherical interpolation between two `(lat, lon)` points, endpoints included.
pub fn great_circle_path(from: (f64, f64), to: (f64, f64), points: usize) -> Vec<(f64, f64)> {
    let unit = |(lat, lon): (f64, f64)| {
        let (lat, lon) = (lat.to_radians(), lon.to_radians());
        [lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()]
    };
    let (u, v) = (unit(from), unit(to));
    let dot = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]).clamp(-1.0, 1.0);
    let omega = dot.acos();
    let steps = points.max(2) - 1;
    if omega < 1e-12 || (std::f64::consts::PI - omega) < 1e-9 {
        // Coincident or antipodal: no unique great circle.
        return (0..=steps)
            .map(|k| {
                let t = k as f64 / steps as f64;
                (from.0 + t * (to.0 - from.0), from.1 + t * (to.1 - from.1))
            })
            .collect();
    }
    (0..=steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            let a = ((1.0 - t) * omega).sin() / omega.sin();
            let b = (t * omega).sin() / omega.sin();
            let p = [a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]];
            let lat = p[2].atan2(p[0].hypot(p[1])).to_degrees();
            let lon = p[1].atan2(p[0]).to_degrees();
            (lat, lon)
        })
        .collect()
}

impl GeoMapSpec {
    /// RFC 7946 FeatureCollection with `[longitude, latitude]` positions.
    pub fn to_geojson(&self) -> String {
        let mut features: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| {
                json!({
                    "type": "Feature",
                    "geometry": {
                        "type": "Point",
                        "coordinates": [round6(n.longitude), round6(n.latitude)],
                    },
                    "properties": {
                        "country": n.country,
                        "iso3": n.iso3,
                        "fractional_papers": n.fractional_papers.parse::<f64>().unwrap_or(0.0),
                        "display_size": round6(n.display_size),
                    },
                })
            })
            .collect();
        features.extend(self.links.iter().map(|l| {
            let coords: Vec<Value> = l
                .path
                .iter()
                .map(|&(lat, lon)| json!([round6(lon), round6(lat)]))
                .collect();
            json!({
                "type": "Feature",
                "geometry": { "type": "LineString", "coordinates": coords },
                "properties": {
                    "country_a": l.country_a,
                    "country_b": l.country_b,
                    "weight": l.weight,
                    "label": l.label,
                },
            })
        }));
        let collection = json!({
            "type": "FeatureCollection",
            "features": features,
            "legend": self.legend,
        });
        let mut s = serde_json::to_string_pretty(&collection).expect("serializable");
        s.push('\n');
        s
    }

    /// `type,latitude,longitude,name,desc` waypoint rows.
    pub fn nodes_csv(&self) -> String {
        let mut out = String::from("type,latitude,longitude,name,desc\n");
        for n in &self.nodes {
            out.push_str(&format!(
                "W,{},{},{},{}\n",
                fmt6(n.latitude),
                fmt6(n.longitude),
                csv_field(&n.country),
                quoted(&format!("papers: {}", n.fractional_papers))
            ));
        }
        out
    }

    /// `type,latitude,longitude,name` track rows; consecutive rows sharing a
    /// name form one link.
    pub fn links_csv(&self) -> String {
        let mut out = String::from("type,latitude,longitude,name\n");
        for l in &self.links {
            for &(lat, lon) in &l.path {
                out.push_str(&format!("T,{},{},{}\n", fmt6(lat), fmt6(lon), quoted(&l.label)));
            }
        }
        out
    }
}

pub fn export_geo(
    sub: &Subnetwork<'_>,
    counts_frac: &CountVector,
    registry: &CountryRegistry,
    rule: SizeRule,
    great_circle: bool,
) -> Result<GeoExport> {
    let spec = geo_map_spec(sub, counts_frac, registry, rule, great_circle)?;
    Ok(GeoExport {
        geojson: spec.to_geojson(),
        nodes_csv: spec.nodes_csv(),
        links_csv: spec.links_csv(),
    })
}
