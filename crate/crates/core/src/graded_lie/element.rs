use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tensor::TensorPoly;
use super::word::{is_lyndon, standard_factorization, weight, Word};
use super::{GradingView, LieError, Presentation};

/// A basis monomial: either a Lyndon word (bracketed by standard
/// factorization) or the square `[w, w]` of an odd Lyndon word `w`, stored
/// as the word `ww` with `square` set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    word: Word,
    square: bool,
}

impl Monomial {
    pub fn generator(g: u16) -> Self {
        Monomial { word: vec![g], square: false }
    }

    /// Build and validate a basis monomial.
    pub fn new(word: Word, square: bool, weights: &[u32]) -> Option<Self> {
        if word.iter().any(|&g| g as usize >= weights.len()) {
            return None;
        }
        let ok = if square {
            let h = word.len() / 2;
            word.len() % 2 == 0
                && word[..h] == word[h..]
                && is_lyndon(&word[..h])
                && weight(&word[..h], weights) % 2 == 1
        } else {
            is_lyndon(&word)
        };
        ok.then_some(Monomial { word, square })
    }

    pub fn word(&self) -> &[u16] {
        &self.word
    }

    pub fn is_square(&self) -> bool {
        self.square
    }

    pub fn is_generator(&self) -> bool {
        self.word.len() == 1
    }

    pub fn degree(&self, weights: &[u32]) -> u32 {
        weight(&self.word, weights)
    }

    /// The two factors of the top bracket, or `None` for a generator.
    pub fn children(&self) -> Option<(Monomial, Monomial)> {
        if self.square {
            let h = self.word.len() / 2;
            let half = Monomial { word: self.word[..h].to_vec(), square: false };
            return Some((half.clone(), half));
        }
        if self.word.len() < 2 {
            return None;
        }
        let (u, v) = standard_factorization(&self.word);
        Some((
            Monomial { word: u.to_vec(), square: false },
            Monomial { word: v.to_vec(), square: false },
        ))
    }

    pub fn render(&self, pres: &Presentation) -> String {
        match self.children() {
            None => pres.generators()[self.word[0] as usize].name.clone(),
            Some((l, r)) => format!("[{},{}]", l.render(pres), r.render(pres)),
        }
    }

    /// Sign relating Samelson and Whitehead coefficients: one factor
    /// (−1)^{|left|} per bracket node, Samelson degree of the left factor.
    fn shift_sign_negative(&self, weights: &[u32]) -> bool {
        match self.children() {
            None => false,
            Some((l, r)) => {
                let here = l.degree(weights) % 2 == 1;
                here ^ l.shift_sign_negative(weights) ^ r.shift_sign_negative(weights)
            }
        }
    }
}

/// Homogeneous element of a free graded Lie algebra with exact rational
/// coefficients, held in normal form over the graded Lyndon basis.
///
/// Coefficients are stored relative to the basis of the element's `view`:
/// in the Whitehead view the basis monomial `[m1, m2]` denotes the iterated
/// Whitehead product, which differs from the Samelson one by a sign.
#[derive(Debug, Clone)]
pub struct LieElement {
    pres: Arc<Presentation>,
    view: GradingView,
    degree: Option<u32>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        same_pres(&self.pres, &other.pres) && self.view == other.view && self.terms == other.terms
    }
}

impl Eq for LieElement {}

fn same_pres(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn parity_sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

impl LieElement {
    pub fn zero(pres: &Arc<Presentation>, view: GradingView) -> Self {
        LieElement { pres: pres.clone(), view, degree: None, terms: BTreeMap::new() }
    }

    /// Zero element that still remembers its (Samelson) degree.
    pub fn zero_of_degree(pres: &Arc<Presentation>, view: GradingView, samelson_degree: u32) -> Self {
        LieElement { pres: pres.clone(), view, degree: Some(samelson_degree), terms: BTreeMap::new() }
    }

    pub fn generator(pres: &Arc<Presentation>, name: &str, view: GradingView) -> Result<Self, LieError> {
        let i = pres.index_of(name).ok_or_else(|| LieError::UnknownGenerator(name.to_string()))?;
        Ok(Self::generator_at(pres, i, view))
    }

    pub fn generator_at(pres: &Arc<Presentation>, i: u16, view: GradingView) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::generator(i), BigRational::one());
        LieElement {
            pres: pres.clone(),
            view,
            degree: Some(pres.generators()[i as usize].samelson_degree),
            terms,
        }
    }

    /// Element with a single basis monomial and coefficient, given in `view`.
    pub fn monomial(pres: &Arc<Presentation>, m: Monomial, c: BigRational, view: GradingView) -> Self {
        let degree = Some(m.degree(&pres.weights()));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LieElement { pres: pres.clone(), view, degree, terms }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn view(&self) -> GradingView {
        self.view
    }

    /// Samelson degree, or `None` for a zero of unknown degree.
    pub fn samelson_degree(&self) -> Option<u32> {
        self.degree
    }

    /// Degree in the element's own view.
    pub fn degree(&self) -> Option<u32> {
        self.degree.map(|d| self.view.degree_of(d))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Normal-form term list as (rendered monomial, coefficient) pairs.
    pub fn term_list(&self) -> Vec<(String, BigRational)> {
        self.terms.iter().map(|(m, c)| (m.render(&self.pres), c.clone())).collect()
    }

    fn check_pres(&self, other: &LieElement) -> Result<(), LieError> {
        if same_pres(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(LieError::PresentationMismatch)
        }
    }

    fn join_degree(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>, LieError> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => Err(LieError::MixedDegree(x, y)),
            (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
            _ => Ok(None),
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check_pres(other)?;
        let other = other.in_view(self.view);
        let degree = if self.is_zero() && other.is_zero() {
            self.degree.or(other.degree)
        } else if self.is_zero() {
            other.degree
        } else if other.is_zero() {
            self.degree
        } else {
            Self::join_degree(self.degree, other.degree)?
        };
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let sum = terms.remove(m).unwrap_or_else(BigRational::zero) + c;
            if !sum.is_zero() {
                terms.insert(m.clone(), sum);
            }
        }
        Ok(LieElement { pres: self.pres.clone(), view: self.view, degree, terms })
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> LieElement {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect()
        };
        LieElement { pres: self.pres.clone(), view: self.view, degree: self.degree, terms }
    }

    pub fn scale_int(&self, k: i64) -> LieElement {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// The same element with coefficients expressed in `to`.
    pub fn in_view(&self, to: GradingView) -> LieElement {
        if to == self.view {
            return self.clone();
        }
        let w = self.pres.weights();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = if m.shift_sign_negative(&w) { -c } else { c.clone() };
                (m.clone(), c)
            })
            .collect();
        LieElement { pres: self.pres.clone(), view: to, degree: self.degree, terms }
    }

    /// Re-express the element in the grading `to`; `from` must be the
    /// element's current view. Each bracket node contributes (−1)^k, k the
    /// Samelson degree of its left factor, so the map is an involution.
    pub fn adjoint_shift(&self, from: GradingView, to: GradingView) -> Result<LieElement, LieError> {
        if from != self.view {
            return Err(LieError::Unsupported(format!(
                "element is in the {:?} view, not {:?}",
                self.view, from
            )));
        }
        Ok(self.in_view(to))
    }

    /// Image in the free associative algebra (Samelson coefficients).
    pub fn to_tensor(&self) -> TensorPoly {
        let s = self.in_view(GradingView::Samelson);
        let w = self.pres.weights();
        let mut memo = HashMap::new();
        let mut out = TensorPoly::zero();
        for (m, c) in &s.terms {
            let p = lie_poly(m, &w, &mut memo);
            out.add_scaled(&p, c);
        }
        out
    }

    /// Normal form of a tensor that is known to be a Lie element of the
    /// given Samelson degree.
    pub fn from_tensor(
        pres: &Arc<Presentation>,
        t: TensorPoly,
        samelson_degree: Option<u32>,
        view: GradingView,
    ) -> Result<LieElement, LieError> {
        let w = pres.weights();
        let mut t = t;
        let mut memo = HashMap::new();
        let mut terms = BTreeMap::new();
        let mut degree = samelson_degree;
        while let Some((word, c)) = t.terms.first_key_value().map(|(a, b)| (a.clone(), b.clone())) {
            let d = weight(&word, &w);
            degree = Some(Self::join_degree(degree, Some(d))?.unwrap_or(d));
            let m = if is_lyndon(&word) {
                Monomial { word: word.clone(), square: false }
            } else {
                Monomial::new(word.clone(), true, &w).ok_or_else(|| {
                    LieError::Unsupported("tensor is not in the image of the Lie algebra".into())
                })?
            };
            let p = lie_poly(&m, &w, &mut memo);
            let lead = p.terms.get(&word).cloned().unwrap_or_else(BigRational::zero);
            debug_assert!(p.terms.keys().next() == Some(&word));
            if lead.is_zero() {
                return Err(LieError::Unsupported("degenerate leading word".into()));
            }
            let coef = c / lead;
            t.add_scaled(&p, &-coef.clone());
            terms.insert(m, coef);
        }
        let s = LieElement { pres: pres.clone(), view: GradingView::Samelson, degree, terms };
        Ok(s.in_view(view))
    }

    /// Samelson bracket ⟨x, y⟩, graded antisymmetric of degree 0.
    pub fn samelson_bracket(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check_pres(other)?;
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        if self.is_zero() || other.is_zero() {
            return Ok(LieElement {
                pres: self.pres.clone(),
                view: GradingView::Samelson,
                degree,
                terms: BTreeMap::new(),
            });
        }
        let (dx, dy) = (self.degree.unwrap_or(0), other.degree.unwrap_or(0));
        let t = self.to_tensor().graded_commutator(&other.to_tensor(), dx, dy);
        LieElement::from_tensor(&self.pres, t, degree, GradingView::Samelson)
    }

    /// Whitehead product [X, Y] = (−1)^{|x|} ad⟨x, y⟩ with |x| the Samelson
    /// degree of the adjoint of X; result in the Whitehead view.
    pub fn whitehead_bracket(&self, other: &LieElement) -> Result<LieElement, LieError> {
        let s = self.samelson_bracket(other)?;
        let odd = self.degree.map(|d| d % 2 == 1).unwrap_or(false);
        Ok(s.scale(&parity_sign(odd)).in_view(GradingView::Whitehead))
    }

    /// Bracket in the view of `self`.
    pub fn bracket(&self, other: &LieElement) -> Result<LieElement, LieError> {
        match self.view {
            GradingView::Samelson => self.samelson_bracket(other),
            GradingView::Whitehead => self.whitehead_bracket(other),
        }
    }

    /// Signed Jacobi combination in the Whitehead grading:
    /// (−1)^{pr}[[x,y],z] + (−1)^{qp}[[y,z],x] + (−1)^{rq}[[z,x],y].
    pub fn jacobi_defect(x: &LieElement, y: &LieElement, z: &LieElement) -> Result<LieElement, LieError> {
        x.check_pres(y)?;
        x.check_pres(z)?;
        let wv = GradingView::Whitehead;
        let (x, y, z) = (x.in_view(wv), y.in_view(wv), z.in_view(wv));
        let (p, q, r) = match (x.degree(), y.degree(), z.degree()) {
            (Some(p), Some(q), Some(r)) => (p, q, r),
            _ => return Ok(LieElement::zero(&x.pres, wv)),
        };
        let t1 = x.bracket(&y)?.bracket(&z)?.scale(&parity_sign(p * r % 2 == 1));
        let t2 = y.bracket(&z)?.bracket(&x)?.scale(&parity_sign(q * p % 2 == 1));
        let t3 = z.bracket(&x)?.bracket(&y)?.scale(&parity_sign(r * q % 2 == 1));
        t1.add(&t2)?.add(&t3)
    }

    /// Image under the Lie algebra map sending generator `i` to
    /// `images[i]` (homogeneous of the same Samelson degree). The result
    /// lives in the images' presentation and in `self`'s view.
    pub fn substitute(&self, target: &Arc<Presentation>, images: &[LieElement]) -> Result<LieElement, LieError> {
        if images.len() != self.pres.len() {
            return Err(LieError::PresentationMismatch);
        }
        let s = self.in_view(GradingView::Samelson);
        let images: Vec<LieElement> = images.iter().map(|e| e.in_view(GradingView::Samelson)).collect();
        for (g, e) in self.pres.generators().iter().zip(&images) {
            if !same_pres(e.presentation(), target) {
                return Err(LieError::PresentationMismatch);
            }
            if let Some(d) = e.samelson_degree() {
                if !e.is_zero() && d != g.samelson_degree {
                    return Err(LieError::MixedDegree(d, g.samelson_degree));
                }
            }
        }
        let mut memo: HashMap<Monomial, LieElement> = HashMap::new();
        let mut out = LieElement::zero(target, GradingView::Samelson);
        out.degree = s.degree;
        for (m, c) in &s.terms {
            let img = substitute_monomial(m, &images, &self.pres.weights(), &mut memo)?;
            out = out.add(&img.scale(c))?;
        }
        out.degree = s.degree;
        Ok(out.in_view(self.view))
    }

    /// Render as `c*[a,b] + …`, or `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            s.push_str(&m.render(&self.pres));
        }
        s
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The bracket polynomial P(m) in the tensor algebra.
fn lie_poly(m: &Monomial, w: &[u32], memo: &mut HashMap<Monomial, TensorPoly>) -> TensorPoly {
    if let Some(p) = memo.get(m) {
        return p.clone();
    }
    let p = match m.children() {
        None => TensorPoly::letter(m.word[0]),
        Some((l, r)) => {
            let pl = lie_poly(&l, w, memo);
            let pr = lie_poly(&r, w, memo);
            pl.graded_commutator(&pr, l.degree(w), r.degree(w))
        }
    };
    memo.insert(m.clone(), p.clone());
    p
}

fn substitute_monomial(
    m: &Monomial,
    images: &[LieElement],
    w: &[u32],
    memo: &mut HashMap<Monomial, LieElement>,
) -> Result<LieElement, LieError> {
    if let Some(e) = memo.get(m) {
        return Ok(e.clone());
    }
    let e = match m.children() {
        None => images[m.word[0] as usize].clone(),
        Some((l, r)) => {
            let a = substitute_monomial(&l, images, w, memo)?;
            let b = substitute_monomial(&r, images, w, memo)?;
            let mut e = a.samelson_bracket(&b)?;
            e.degree = Some(m.degree(w));
            e
        }
    };
    memo.insert(m.clone(), e.clone());
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::super::Generator;
    use super::*;

    fn pres(degs: &[(&str, u32)]) -> Arc<Presentation> {
        Presentation::new(degs.iter().map(|(n, d)| Generator::new(*n, *d)).collect()).unwrap()
    }

    #[test]
    fn even_square_vanishes() {
        let p = pres(&[("a", 2)]);
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn odd_square_survives() {
        let p = pres(&[("a", 1)]);
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        let aa = a.bracket(&a).unwrap();
        assert_eq!(aa.render(), "[a,a]");
        assert_eq!(aa.samelson_degree(), Some(2));
        // [a,[a,a]] = 0 by Jacobi.
        assert!(a.bracket(&aa).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry_sign() {
        let p = pres(&[("a", 1), ("b", 2)]);
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        let b = LieElement::generator(&p, "b", GradingView::Samelson).unwrap();
        let ab = a.bracket(&b).unwrap();
        let ba = b.bracket(&a).unwrap();
        assert!(ab.add(&ba).unwrap().is_zero());
    }

    #[test]
    fn mixed_degree_rejected() {
        let p = pres(&[("a", 1), ("b", 2)]);
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        let b = LieElement::generator(&p, "b", GradingView::Samelson).unwrap();
        assert_eq!(a.add(&b), Err(LieError::MixedDegree(1, 2)));
    }

    #[test]
    fn shift_sign_once_per_node() {
        let p = pres(&[("a", 1), ("b", 1)]);
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        let b = LieElement::generator(&p, "b", GradingView::Samelson).unwrap();
        let ab = a.bracket(&b).unwrap();
        let w = ab.adjoint_shift(GradingView::Samelson, GradingView::Whitehead).unwrap();
        assert_eq!(w.render(), "-[a,b]");
        let back = w.adjoint_shift(GradingView::Whitehead, GradingView::Samelson).unwrap();
        assert_eq!(back, ab);
        assert!(ab.adjoint_shift(GradingView::Whitehead, GradingView::Samelson).is_err());
    }

    #[test]
    fn whitehead_generator_keeps_coefficient() {
        let p = pres(&[("a", 1)]);
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        let w = a.in_view(GradingView::Whitehead);
        assert_eq!(w.degree(), Some(2));
        assert_eq!(w.render(), "a");
    }

    #[test]
    fn whitehead_self_product_of_even_class() {
        // ι in π_2: [ι, ι] is nonzero and [ι,[ι,ι]] = 0.
        let p = pres(&[("i", 1)]);
        let i = LieElement::generator(&p, "i", GradingView::Whitehead).unwrap();
        let ii = i.bracket(&i).unwrap();
        assert!(!ii.is_zero());
        assert_eq!(ii.degree(), Some(3));
        assert!(i.bracket(&ii).unwrap().is_zero());
    }

    #[test]
    fn substitute_is_lie_map() {
        let p = pres(&[("a", 1), ("b", 1)]);
        let q = pres(&[("x", 1)]);
        let x = LieElement::generator(&q, "x", GradingView::Samelson).unwrap();
        let a = LieElement::generator(&p, "a", GradingView::Samelson).unwrap();
        let b = LieElement::generator(&p, "b", GradingView::Samelson).unwrap();
        let ab = a.bracket(&b).unwrap();
        let img = ab.substitute(&q, &[x.clone(), x.scale_int(3)]).unwrap();
        assert_eq!(img, x.bracket(&x).unwrap().scale_int(3));
    }
}
