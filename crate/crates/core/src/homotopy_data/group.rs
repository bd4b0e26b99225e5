use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::lattice::{self, Mat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("elements belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("torsion factors {0:?} do not form a divisor chain of integers ≥ 2")]
    NonCanonical(Vec<i64>),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("homomorphism is not well defined on generator {0}")]
    NotWellDefined(usize),
}

/// Finitely generated abelian group Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k with d₁ | d₂ | ….
/// Generators are ordered free first, then torsion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FGAbGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

impl FGAbGroup {
    /// Canonical constructor: rejects anything that is not already a divisor chain.
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self, GroupError> {
        let chain = torsion.iter().all(|&d| d >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain {
            return Err(GroupError::NonCanonical(torsion));
        }
        Ok(FGAbGroup { free_rank, torsion })
    }

    /// Normalize an arbitrary list of cyclic orders (0 meaning Z, 1 trivial)
    /// into invariant-factor form. Returns the group and whether the input
    /// was already canonical.
    pub fn normalized(free_rank: usize, factors: &[i64]) -> (Self, bool) {
        let rows: Mat = factors
            .iter()
            .enumerate()
            .map(|(i, &d)| (0..factors.len()).map(|j| if i == j { i128::from(d) } else { 0 }).collect())
            .collect();
        let (r, t) = lattice::cokernel_invariants(&rows, factors.len());
        let g = FGAbGroup { free_rank: free_rank + r, torsion: t.into_iter().map(|d| d as i64).collect() };
        let canonical = g.torsion == factors;
        (g, canonical)
    }

    /// Cokernel of an integer relation matrix on `ngens` generators.
    pub fn from_relations(ngens: usize, relations: &[Vec<i64>]) -> Result<Self, GroupError> {
        for r in relations {
            if r.len() != ngens {
                return Err(GroupError::Arity { expected: ngens, got: r.len() });
            }
        }
        let rows: Mat = relations.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
        let (r, t) = lattice::cokernel_invariants(&rows, ngens);
        Ok(FGAbGroup { free_rank: r, torsion: t.into_iter().map(|d| d as i64).collect() })
    }

    pub fn trivial() -> Self {
        FGAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn integers() -> Self {
        FGAbGroup { free_rank: 1, torsion: vec![] }
    }

    /// Z/n, with n = 0 giving Z and n = 1 the trivial group.
    pub fn cyclic(n: i64) -> Self {
        Self::normalized(0, &[n]).0
    }

    pub fn direct_sum(&self, other: &FGAbGroup) -> FGAbGroup {
        let factors: Vec<i64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::normalized(self.free_rank + other.free_rank, &factors).0
    }

    pub fn rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().map(|&d| d as u64).product())
    }

    /// Modulus of coordinate `i` (0 for free coordinates).
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { group: self.clone(), coords: vec![0; self.ngens()] }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.ngens()];
        coords[i] = 1;
        self.element(&coords).expect("arity matches")
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    /// Element from raw coordinates (free then torsion), reduced.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.ngens() {
            return Err(GroupError::Arity { expected: self.ngens(), got: coords.len() });
        }
        let coords = coords
            .iter()
            .enumerate()
            .map(|(i, &c)| match self.modulus(i) {
                0 => c,
                d => c.mod_floor(&d),
            })
            .collect();
        Ok(GroupElement { group: self.clone(), coords })
    }

    /// Relation matrix (columns = generators) as diagonal moduli: an
    /// `ngens × ngens` matrix whose column j is d_j e_j.
    fn relation_columns(&self) -> Mat {
        let n = self.ngens();
        (0..n).map(|i| (0..n).map(|j| if i == j { i128::from(self.modulus(i)) } else { 0 }).collect()).collect()
    }

    /// Whether `y` lies in the subgroup generated by `gens`.
    pub fn subgroup_contains(&self, gens: &[GroupElement], y: &GroupElement) -> bool {
        self.express_in(gens, y).is_some()
    }

    /// Integer coefficients expressing `y` in terms of `gens`, if possible.
    pub fn express_in(&self, gens: &[GroupElement], y: &GroupElement) -> Option<Vec<i64>> {
        let n = self.ngens();
        let k = gens.len();
        let rel = self.relation_columns();
        let a: Mat = (0..n)
            .map(|i| {
                let mut row: Vec<i128> = gens.iter().map(|g| i128::from(g.coords[i])).collect();
                row.extend(rel[i].iter().copied());
                row
            })
            .collect();
        let b: Vec<i128> = y.coords.iter().map(|&c| i128::from(c)).collect();
        lattice::solve(&a, k + n, &b).map(|x| x[..k].iter().map(|&v| v as i64).collect())
    }

    /// Equality of the subgroups generated by `a` and `b`.
    pub fn same_subgroup(&self, a: &[GroupElement], b: &[GroupElement]) -> bool {
        a.iter().all(|x| self.subgroup_contains(b, x)) && b.iter().all(|x| self.subgroup_contains(a, x))
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if run == 1 { format!("Z{d}") } else { format!("Z{d}^{run}") });
            i += run;
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Element of an [`FGAbGroup`] in reduced coordinates (free first, torsion
/// residues in [0, dᵢ)).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    group: FGAbGroup,
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn group(&self) -> &FGAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn free_coords(&self) -> &[i64] {
        &self.coords[..self.group.free_rank]
    }

    pub fn torsion_coords(&self) -> &[i64] {
        &self.coords[self.group.free_rank..]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &GroupElement) -> Result<(), GroupError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch(self.group.to_string(), other.group.to_string()))
        }
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(other)?;
        let c: Vec<i64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.group.element(&c)
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        let c: Vec<i64> = self.coords.iter().map(|a| a * k).collect();
        self.group.element(&c).expect("same arity")
    }

    /// Order of the element, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        if self.free_coords().iter().any(|&c| c != 0) {
            return None;
        }
        let mut ord: i64 = 1;
        for (i, &c) in self.torsion_coords().iter().enumerate() {
            let d = self.group.torsion[i];
            ord = ord.lcm(&(d / c.gcd(&d)));
        }
        Some(ord as u64)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({}) in {}", c.join(", "), self.group)
    }
}

/// Homomorphism given by the images of the source generators: `matrix[i][j]`
/// is coordinate i of the image of generator j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    source: FGAbGroup,
    target: FGAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl GroupHom {
    pub fn new(source: FGAbGroup, target: FGAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        if matrix.len() != target.ngens() {
            return Err(GroupError::Arity { expected: target.ngens(), got: matrix.len() });
        }
        for row in &matrix {
            if row.len() != source.ngens() {
                return Err(GroupError::Arity { expected: source.ngens(), got: row.len() });
            }
        }
        let h = GroupHom { source, target, matrix };
        for j in 0..h.source.ngens() {
            let d = h.source.modulus(j);
            if d != 0 && !h.image_of_generator(j).scale(d).is_zero() {
                return Err(GroupError::NotWellDefined(j));
            }
        }
        Ok(h)
    }

    pub fn source(&self) -> &FGAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Same homomorphism with one raw matrix entry replaced (no validation),
    /// used to test that audits catch corrupted data.
    pub fn with_entry(&self, i: usize, j: usize, v: i64) -> GroupHom {
        let mut h = self.clone();
        h.matrix[i][j] = v;
        h
    }

    pub fn image_of_generator(&self, j: usize) -> GroupElement {
        let c: Vec<i64> = self.matrix.iter().map(|row| row[j]).collect();
        self.target.element(&c).expect("arity checked")
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        if x.group != self.source {
            return Err(GroupError::GroupMismatch(x.group.to_string(), self.source.to_string()));
        }
        let c: Vec<i64> = self.matrix.iter().map(|row| row.iter().zip(&x.coords).map(|(a, b)| a * b).sum()).collect();
        self.target.element(&c)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom, GroupError> {
        if first.target != self.source {
            return Err(GroupError::GroupMismatch(first.target.to_string(), self.source.to_string()));
        }
        let cols: Vec<GroupElement> =
            (0..first.source.ngens()).map(|j| self.apply(&first.image_of_generator(j))).collect::<Result<_, _>>()?;
        let matrix = (0..self.target.ngens()).map(|i| cols.iter().map(|c| c.coords[i]).collect()).collect();
        GroupHom::new(first.source.clone(), self.target.clone(), matrix)
    }

    pub fn negate(&self) -> GroupHom {
        let cols: Vec<GroupElement> = (0..self.source.ngens()).map(|j| self.image_of_generator(j).neg()).collect();
        let matrix = (0..self.target.ngens()).map(|i| cols.iter().map(|c| c.coords[i]).collect()).collect();
        GroupHom { source: self.source.clone(), target: self.target.clone(), matrix }
    }

    pub fn image_generators(&self) -> Vec<GroupElement> {
        (0..self.source.ngens()).map(|j| self.image_of_generator(j)).filter(|g| !g.is_zero()).collect()
    }

    /// Generators of the kernel, as elements of the source.
    pub fn kernel_generators(&self) -> Vec<GroupElement> {
        let n = self.source.ngens();
        let m = self.target.ngens();
        // Solve M x + D_T z = 0 over Z; x-parts generate the kernel.
        let a: Mat = (0..m)
            .map(|i| {
                let mut row: Vec<i128> = self.matrix[i].iter().map(|&v| i128::from(v)).collect();
                row.extend((0..m).map(|j| if i == j { i128::from(self.target.modulus(i)) } else { 0 }));
                row
            })
            .collect();
        let mut out: Vec<GroupElement> = lattice::kernel(&a, n + m)
            .into_iter()
            .map(|v| {
                let x: Vec<i64> = v[..n].iter().map(|&c| c as i64).collect();
                self.source.element(&x).expect("arity")
            })
            .filter(|g| !g.is_zero())
            .collect();
        out.sort_by(|a, b| a.coords.cmp(&b.coords));
        out.dedup();
        out
    }

    pub fn image_contains(&self, y: &GroupElement) -> bool {
        self.target.subgroup_contains(&self.image_generators(), y)
    }

    pub fn preimage(&self, y: &GroupElement) -> Option<GroupElement> {
        let gens: Vec<GroupElement> = (0..self.source.ngens()).map(|j| self.image_of_generator(j)).collect();
        let k = self.target.express_in(&gens, y)?;
        self.source.element(&k).ok()
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generators().iter().all(|g| self.image_contains(g))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.image_generators().is_empty()
    }

    /// Agreement on every source generator.
    pub fn agrees_with(&self, other: &GroupHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.source.ngens()).all(|j| self.image_of_generator(j) == other.image_of_generator(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let (g, canonical) = FGAbGroup::normalized(0, &[4, 2]);
        assert_eq!(g.torsion(), &[2, 4]);
        assert!(!canonical);
        let (g, _) = FGAbGroup::normalized(1, &[2, 3]);
        assert_eq!(g.to_string(), "Z + Z6");
        assert_eq!(FGAbGroup::cyclic(1), FGAbGroup::trivial());
        assert_eq!(FGAbGroup::cyclic(0), FGAbGroup::integers());
        assert!(FGAbGroup::new(0, vec![4, 2]).is_err());
    }

    #[test]
    fn element_arithmetic() {
        let g = FGAbGroup::new(1, vec![12]).unwrap();
        let x = g.element(&[2, -1]).unwrap();
        assert_eq!(x.coords(), &[2, 11]);
        assert_eq!(x.add(&x.neg()).unwrap(), g.zero());
        assert_eq!(g.element(&[0, 3]).unwrap().order(), Some(4));
        assert_eq!(x.order(), None);
    }

    #[test]
    fn hom_kernel_image() {
        // Σ: Z2 → Z12, 1 ↦ 6.
        let s = GroupHom::new(FGAbGroup::cyclic(2), FGAbGroup::cyclic(12), vec![vec![6]]).unwrap();
        assert!(!s.is_surjective());
        assert!(s.is_injective());
        // Z → Z2 reduction.
        let r = GroupHom::new(FGAbGroup::integers(), FGAbGroup::cyclic(2), vec![vec![1]]).unwrap();
        assert!(r.is_surjective());
        let k = r.kernel_generators();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].coords()[0].abs(), 2);
        // Not well defined: Z2 → Z, 1 ↦ 1.
        assert!(GroupHom::new(FGAbGroup::cyclic(2), FGAbGroup::integers(), vec![vec![1]]).is_err());
    }
}
