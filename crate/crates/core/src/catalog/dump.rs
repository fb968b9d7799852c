use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::psi::{kernel_generator, psi_star};
use super::relations::relation_polynomial;
use super::{bfdiff_ring, bk_ring, isometry_group, CatalogError, SurfaceFamily};
use crate::algebra::render_rational;
use crate::graded::{Field, HilbertSeries};
use crate::localization::{atiyah_bott_index, euler_class, h01_character_standard, isotropy_rep_name, split_index};

/// One entry of the catalog, keyed by object, index (n or l), family and
/// coefficients; values are canonical renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub object: String,
    pub key: Option<u32>,
    pub family: Option<SurfaceFamily>,
    pub coefficients: String,
    pub value: BTreeMap<String, String>,
}

fn record(object: &str, key: Option<u32>, family: Option<SurfaceFamily>, coefficients: &str, value: &[(&str, String)]) -> CatalogRecord {
    CatalogRecord {
        object: object.into(),
        key,
        family,
        coefficients: coefficients.into(),
        value: value.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
    }
}

pub fn catalog_dump() -> Result<Vec<CatalogRecord>, CatalogError> {
    let mut out = Vec::new();
    for n in 0..=12u32 {
        let i = atiyah_bott_index(n)?;
        let s = split_index(&i)?;
        out.push(record(
            "index",
            Some(n),
            None,
            "Z",
            &[
                ("character", i.value().to_string()),
                ("positive", s.positive.to_string()),
                ("negative", s.negative.to_string()),
            ],
        ));
    }
    for n in 2..=12u32 {
        out.push(record(
            "h01_standard",
            Some(n),
            None,
            "Z",
            &[
                ("character", h01_character_standard(n)?.value().to_string()),
                ("representation", isotropy_rep_name(n)?.to_string()),
            ],
        ));
        out.push(record("euler_class", Some(n), None, "Z", &[("e", euler_class(n)?.value.to_string())]));
    }
    for n in 0..=12u32 {
        let psi = psi_star(n);
        out.push(record(
            "psi_star",
            Some(n),
            None,
            "Q",
            &[
                ("group", isometry_group(n).to_string()),
                ("T", psi.images()[0].to_string()),
                ("X", psi.images()[1].to_string()),
                ("Y", psi.images()[2].to_string()),
                ("kernel", kernel_generator(n).to_string()),
            ],
        ));
    }
    for n in 0..=2u32 {
        for field in [Field::Q, Field::F2] {
            out.push(record("bk_ring", Some(n), None, field.label(), &[("ring", bk_ring(n, field).to_string())]));
        }
    }
    out.push(record("bfdiff_ring", None, None, "Q", &[("ring", bfdiff_ring(Field::Q).to_string())]));
    for family in [SurfaceFamily::Untwisted, SurfaceFamily::Twisted] {
        for l in 0..=5u32 {
            let r = relation_polynomial(l, family);
            let scalars: Vec<String> = r.scalars.iter().map(render_rational).collect();
            let series = HilbertSeries::from_degrees(&[2, 4, 4], &[r.degree()]);
            out.push(record(
                "relation",
                Some(l),
                Some(family),
                "Q",
                &[
                    ("R", r.value.to_string()),
                    ("degree", r.degree().to_string()),
                    ("scalars", scalars.join(", ")),
                    ("hilbert_series", series.to_string()),
                ],
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trips() {
        let d = catalog_dump().unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: Vec<CatalogRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let i0 = d.iter().find(|r| r.object == "index" && r.key == Some(0)).unwrap();
        assert_eq!(i0.value["character"], "2 + y + 1/y + x + 1/x");
    }
}
