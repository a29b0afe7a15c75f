//! Germ files: `{"n":1,"p":2,"order":6,"components":["x1^2","x1^3"]}` with
//! the polynomial grammar of the core parser. `exact_germ` marks polynomial
//! germs whose jets may be freely re-expanded at higher orders.

use serde::{Deserialize, Serialize};

use germlab_core::{parse_poly, Error, GermJet, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GermFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
    pub n: usize,
    pub p: usize,
    pub order: u32,
    pub components: Vec<String>,
    #[serde(default)]
    pub exact_germ: bool,
}

impl GermFile {
    pub fn from_json(text: &str) -> Result<GermFile> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidGroup(format!("germ file: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<GermFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidGroup(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_germ(&self) -> Result<GermJet> {
        if self.components.len() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "{} components for p = {}",
                self.components.len(),
                self.p
            )));
        }
        let comps = self
            .components
            .iter()
            .map(|s| parse_poly(s, self.n, self.order))
            .collect::<Result<Vec<_>>>()?;
        GermJet::new_map(self.n, self.p, self.order, comps)
    }

    /// Germ at a jet order at least `needed`. Exact germs re-expand freely;
    /// a genuine jet cannot, and `warn` receives a truncation note when the
    /// stored order is short of `needed + 1`.
    pub fn germ_at_order(&self, needed: u32, warn: &mut dyn FnMut(String)) -> Result<GermJet> {
        let g = self.to_germ()?;
        if g.order() >= needed + 1 || self.exact_germ {
            let target = g.order().max(needed);
            return Ok(if self.exact_germ && target > g.order() {
                g.with_order(target)
            } else {
                g
            });
        }
        if g.order() < needed {
            return Err(Error::OrderTooSmall {
                needed,
                have: g.order(),
            });
        }
        warn(format!(
            "germ order {} is below {}; top-degree results may be truncation artifacts \
             (set \"exact_germ\": true for polynomial germs)",
            g.order(),
            needed + 1
        ));
        Ok(g)
    }

    pub fn from_germ(name: &str, g: &GermJet) -> GermFile {
        GermFile {
            name: Some(name.to_string()),
            note: None,
            n: g.source_dim(),
            p: g.target_dim(),
            order: g.order(),
            components: g.components().iter().map(|c| c.display('x')).collect(),
            exact_germ: true,
        }
    }
}
