use std::collections::BTreeMap;

use super::element::Monomial;
use super::word::{lyndon_words, weight};
use super::{Generator, LieError};

pub const DEFAULT_DEGREE_CAP: u32 = 24;

/// Graded-Lyndon basis by Samelson degree, each degree listed in
/// lexicographic word order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree_cap: u32,
    pub by_degree: BTreeMap<u32, Vec<Monomial>>,
}

impl GradedBasis {
    pub fn dimension(&self, degree: u32) -> usize {
        self.by_degree.get(&degree).map_or(0, Vec::len)
    }

    pub fn dimensions(&self) -> BTreeMap<u32, usize> {
        (1..=self.degree_cap).map(|d| (d, self.dimension(d))).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.by_degree.values().flatten()
    }
}

/// Lyndon words plus squares of odd-degree Lyndon words, up to `degree_cap`.
pub fn graded_basis(generators: &[Generator], degree_cap: u32) -> Result<GradedBasis, LieError> {
    let weights: Vec<u32> = generators.iter().map(|g| g.samelson_degree).collect();
    if let Some(g) = generators.iter().find(|g| g.samelson_degree == 0) {
        return Err(LieError::Unsupported(format!("generator `{}` has Whitehead degree 1", g.name)));
    }
    let needed = weights.iter().copied().max().unwrap_or(0);
    if degree_cap < needed {
        return Err(LieError::CapTooSmall { cap: degree_cap, needed });
    }
    let mut by_degree: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for w in lyndon_words(&weights, degree_cap) {
        let d = weight(&w, &weights);
        if d % 2 == 1 && 2 * d <= degree_cap {
            let sq: Vec<u16> = w.iter().chain(w.iter()).copied().collect();
            let m = Monomial::new(sq, true, &weights).expect("square of odd Lyndon word");
            by_degree.entry(2 * d).or_default().push(m);
        }
        let m = Monomial::new(w, false, &weights).expect("Lyndon word");
        by_degree.entry(d).or_default().push(m);
    }
    for v in by_degree.values_mut() {
        v.sort();
    }
    Ok(GradedBasis { degree_cap, by_degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_odd_generator() {
        let b = graded_basis(&[Generator::new("a", 1)], 6).unwrap();
        assert_eq!(b.dimension(1), 1);
        assert_eq!(b.dimension(2), 1);
        assert_eq!(b.dimension(3), 0);
    }

    #[test]
    fn single_even_generator() {
        let b = graded_basis(&[Generator::new("a", 2)], 8).unwrap();
        assert_eq!(b.dimension(2), 1);
        assert_eq!(b.dimension(4), 0);
    }

    #[test]
    fn two_odd_generators_degree_two() {
        let b = graded_basis(&[Generator::new("a", 1), Generator::new("b", 1)], 4).unwrap();
        assert_eq!(b.dimension(2), 3);
    }

    #[test]
    fn cap_too_small() {
        let e = graded_basis(&[Generator::new("a", 5)], 4).unwrap_err();
        assert_eq!(e, LieError::CapTooSmall { cap: 4, needed: 5 });
    }
}
