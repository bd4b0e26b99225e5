use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::word::Word;

/// Element of the free associative algebra, used as the faithful ambient
/// space for Lie elements (PBW embedding).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    pub terms: BTreeMap<Word, BigRational>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn letter(g: u16) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![g], BigRational::one());
        TensorPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&w).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out: BTreeMap<Word, BigRational> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                *out.entry(w).or_insert_with(BigRational::zero) += a * b;
            }
        }
        out.retain(|_, v| !v.is_zero());
        TensorPoly { terms: out }
    }

    /// Graded commutator xy − (−1)^{|x||y|} yx for homogeneous inputs of
    /// degrees `dx`, `dy`.
    pub fn graded_commutator(&self, other: &TensorPoly, dx: u32, dy: u32) -> TensorPoly {
        let mut out = self.mul(other);
        let sign = if (dx * dy) % 2 == 0 { -BigRational::one() } else { BigRational::one() };
        out.add_scaled(&other.mul(self), &sign);
        out
    }
}
