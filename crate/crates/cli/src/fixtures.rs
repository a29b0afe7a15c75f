//! The in-repo germ corpus, embedded so that every report and the whole
//! reproduction suite run offline.

use germlab_core::GermJet;

use crate::germfile::GermFile;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub file: GermFile,
}

macro_rules! embed {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../../../fixtures/", $name, ".json")),
        )
    };
}

const RAW: &[(&str, &str)] = &[
    embed!("cusp"),
    embed!("a1_curve"),
    embed!("a2_curve"),
    embed!("a3_curve"),
    embed!("a4_curve"),
    embed!("a2_swapped"),
    embed!("submersion2"),
    embed!("fold"),
    embed!("whitney_cusp"),
    embed!("beaks2"),
    embed!("beaks3"),
    embed!("swallowtail_map"),
    embed!("dufour"),
    embed!("monge_saddle"),
    embed!("monge_cubic"),
    embed!("curve4"),
    embed!("surface4"),
];

pub fn all() -> Vec<Fixture> {
    RAW.iter()
        .map(|(name, text)| Fixture {
            name,
            file: GermFile::from_json(text).expect("embedded fixture parses"),
        })
        .collect()
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// Fixtures with the given target dimension, as germs at order `order`
/// (all fixtures are exact polynomials, so re-expansion is free).
pub fn germs_for_target(p: usize, order: u32) -> Vec<(String, GermJet)> {
    all()
        .into_iter()
        .filter(|f| f.file.p == p)
        .map(|f| {
            let g = f.file.to_germ().expect("fixture germ");
            let g = if g.order() < order {
                g.with_order(order)
            } else {
                g.truncated(order)
            };
            (f.name.to_string(), g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses() {
        let fs = all();
        assert!(fs.len() >= 15);
        for f in fs {
            let g = f.file.to_germ().unwrap();
            assert!(g.order() >= 4, "{}", f.name);
            assert!(f.file.exact_germ, "{}", f.name);
        }
    }

    #[test]
    fn target_dimension_filter() {
        assert!(germs_for_target(2, 5).len() >= 7);
        assert!(germs_for_target(3, 4).len() >= 3);
        assert!(germs_for_target(4, 5).len() >= 2);
    }
}
