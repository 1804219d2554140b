//! JSON manifold descriptions.
//!
//! ```json
//! {"name": "torus", "dim": 2,
//!  "classes": [{"name": "1", "degree": 0}, {"name": "a", "degree": 1}, ...],
//!  "cup": [{"left": "a", "right": "b", "result": [{"class": "ab", "coeff": "1"}]}]}
//! ```
//!
//! Coefficients are exact rationals written `"p"` or `"p/q"`. Omitted
//! products are zero, except that products with the unit are implied.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::model::{CohomologyClass, CupEntry, ManifoldCohomology};
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub name: String,
    pub dim: u32,
    pub classes: Vec<ClassEntry>,
    #[serde(default)]
    pub cup: Vec<CupFileEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupFileEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub class: String,
    pub coeff: String,
}

impl ManifoldFile {
    pub fn to_cohomology(&self) -> Result<ManifoldCohomology> {
        let classes: Vec<CohomologyClass> = self
            .classes
            .iter()
            .map(|c| CohomologyClass {
                name: c.name.clone(),
                degree: c.degree,
            })
            .collect();
        let index = |name: &str| {
            classes
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| validation!("cup entry references unknown class {name:?}"))
        };
        let mut products = Vec::with_capacity(self.cup.len());
        for entry in &self.cup {
            let mut result = Vec::with_capacity(entry.result.len());
            for t in &entry.result {
                result.push((index(&t.class)?, parse_rational(&t.coeff)?));
            }
            products.push(CupEntry {
                left: index(&entry.left)?,
                right: index(&entry.right)?,
                result,
            });
        }
        ManifoldCohomology::new(&self.name, self.dim, classes, products)
    }

    /// Canonical description: every nonzero product not involving the unit,
    /// in class order.
    pub fn from_cohomology(mc: &ManifoldCohomology) -> Self {
        let classes = mc.classes();
        let unit = mc.unit_index();
        let mut cup = Vec::new();
        for i in (0..classes.len()).filter(|&i| i != unit) {
            for j in (0..classes.len()).filter(|&j| j != unit) {
                let result: Vec<TermEntry> = mc
                    .cup_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| TermEntry {
                        class: classes[k].name.clone(),
                        coeff: format_rational(c),
                    })
                    .collect();
                if !result.is_empty() {
                    cup.push(CupFileEntry {
                        left: classes[i].name.clone(),
                        right: classes[j].name.clone(),
                        result,
                    });
                }
            }
        }
        ManifoldFile {
            name: mc.name().to_string(),
            dim: mc.dim(),
            classes: classes
                .iter()
                .map(|c| ClassEntry {
                    name: c.name.clone(),
                    degree: c.degree,
                })
                .collect(),
            cup,
        }
    }
}

pub fn parse_manifold_json(text: &str) -> Result<ManifoldCohomology> {
    let file: ManifoldFile = serde_json::from_str(text)?;
    file.to_cohomology()
}

pub fn load_manifold(path: &Path) -> Result<ManifoldCohomology> {
    parse_manifold_json(&std::fs::read_to_string(path)?)
}

pub fn manifold_to_json(mc: &ManifoldCohomology) -> String {
    let mut s = serde_json::to_string_pretty(&ManifoldFile::from_cohomology(mc))
        .expect("manifold description serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_model, sphere_preset, torus_preset};
    use crate::Error;

    #[test]
    fn presets_roundtrip() {
        for mc in [torus_preset(), sphere_preset(1).unwrap(), sphere_preset(3).unwrap()] {
            let text = manifold_to_json(&mc);
            let back = parse_manifold_json(&text).unwrap();
            assert_eq!(back, mc);
            assert_eq!(manifold_to_json(&back), text);
            assert_eq!(build_model(&back).unwrap(), build_model(&mc).unwrap());
        }
    }

    #[test]
    fn torus_dump_lists_both_orders() {
        let text = manifold_to_json(&torus_preset());
        let file: ManifoldFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.cup.len(), 2);
        assert_eq!(file.cup[1].left, "b");
        assert_eq!(file.cup[1].result[0].coeff, "-1");
    }

    #[test]
    fn errors_name_the_problem() {
        let unknown = r#"{"name":"x","dim":2,"classes":[{"name":"1","degree":0}],
            "cup":[{"left":"1","right":"q","result":[]}]}"#;
        assert!(matches!(parse_manifold_json(unknown), Err(Error::Validation(s)) if s.contains("\"q\"")));
        let bad_coeff = r#"{"name":"x","dim":2,"classes":[{"name":"1","degree":0},{"name":"w","degree":2}],
            "cup":[{"left":"w","right":"w","result":[{"class":"w","coeff":"1/0"}]}]}"#;
        assert!(matches!(parse_manifold_json(bad_coeff), Err(Error::Parse(_))));
        assert!(matches!(parse_manifold_json("{"), Err(Error::Json(_))));
        let extra = r#"{"name":"x","dim":2,"classes":[],"colour":1}"#;
        assert!(parse_manifold_json(extra).is_err());
    }

    #[test]
    fn big_rational_coefficients_survive() {
        let text = r#"{"name":"cp2ish","dim":4,
            "classes":[{"name":"1","degree":0},{"name":"h","degree":2},{"name":"h2","degree":4}],
            "cup":[{"left":"h","right":"h","result":[{"class":"h2","coeff":"-98765432109876543210987654321/2"}]}]}"#;
        let mc = parse_manifold_json(text).unwrap();
        let again = parse_manifold_json(&manifold_to_json(&mc)).unwrap();
        assert_eq!(mc, again);
        assert!(manifold_to_json(&mc).contains("-98765432109876543210987654321/2"));
    }
}
