//! Datasets compiled into the library.

use crate::error::{Error, Result};
use crate::manifold::ManifoldData;

const SOURCES: [(&str, &str); 7] = [
    ("fig8-class1", include_str!("../data/fig8-class1.json")),
    ("fig8-class2", include_str!("../data/fig8-class2.json")),
    ("fig8-class3", include_str!("../data/fig8-class3.json")),
    ("fig8-class4", include_str!("../data/fig8-class4.json")),
    ("pretzel", include_str!("../data/pretzel.json")),
    ("trefoil-t1", include_str!("../data/trefoil-t1.json")),
    ("trefoil-t2", include_str!("../data/trefoil-t2.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(name, _)| *name)
}

/// The raw file text of a bundled dataset.
pub fn source(name: &str) -> Result<&'static str> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::UnknownDataset(name.to_string()))
}

pub fn by_name(name: &str) -> Result<ManifoldData> {
    let data = ManifoldData::from_json(source(name)?)?;
    data.check()?;
    Ok(data)
}

pub fn all() -> Vec<ManifoldData> {
    names()
        .map(|n| by_name(n).expect("bundled datasets are valid"))
        .collect()
}

/// Figure-eight knot exterior with boundary in class I to IV (`1..=4`).
pub fn fig8(class: u8) -> ManifoldData {
    by_name(&format!("fig8-class{class}")).expect("class in 1..=4")
}

/// Pretzel knot P(-2,3,7) exterior.
pub fn pretzel() -> ManifoldData {
    by_name("pretzel").expect("bundled")
}

/// Trefoil exterior, four-tetrahedron triangulation `1` or `2`.
pub fn trefoil(which: u8) -> ManifoldData {
    by_name(&format!("trefoil-t{which}")).expect("1 or 2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_are_canonical() {
        for name in names() {
            let data = by_name(name).unwrap();
            assert_eq!(data.to_canonical_json().unwrap(), source(name).unwrap());
        }
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(by_name("fig8"), Err(Error::UnknownDataset(_))));
    }
}
