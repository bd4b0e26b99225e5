//! Term rewriting for the generalized J-construction J[ρ] of maps
//! ρ: X → Map(ΣY, ΣY).
//!
//! Rules: J is additive, J[φ∘ρ] = φ_*J[ρ], a constant map at φ is φ∘ε, and
//! when X is a suspension J[ε] = 0. φ_* is a homomorphism, so it distributes
//! over sums. Normal forms are integer combinations of φ₁_*⋯φ_k_* J[a] with a
//! an atom or ε.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

/// Maps X → Map(ΣY, ΣY).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassTerm {
    Atom(String),
    /// The constant map at the identity.
    Epsilon,
    /// The constant map at φ.
    Const(String),
    /// φ∘ρ (post-composition in Map(ΣY, ΣY)).
    Compose(String, Box<ClassTerm>),
    Sum(Vec<ClassTerm>),
    Neg(Box<ClassTerm>),
}

/// Elements of [Σ(X ∗ Y)-type domain, ΣY].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JTerm {
    Zero,
    J(ClassTerm),
    Push(String, Box<JTerm>),
    Sum(Vec<JTerm>),
    Neg(Box<JTerm>),
    Scale(i64, Box<JTerm>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JContext {
    pub x_is_suspension: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Rule {
    JSum,
    JNeg,
    JCompose,
    JConstToEpsilon,
    JConstVanishes,
    JEpsilonVanishes,
    PushSum,
    PushNeg,
    PushScale,
    PushZero,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Base {
    Atom(String),
    Epsilon,
}

/// Σ c · (φ₁_* ⋯ φ_k_* J[base]), keyed by (push chain outermost first, base).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalForm(pub BTreeMap<(Vec<String>, Base), i64>);

impl NormalForm {
    fn single(chain: Vec<String>, base: Base) -> Self {
        NormalForm(BTreeMap::from([((chain, base), 1)]))
    }

    fn add(mut self, other: NormalForm) -> Self {
        for (k, v) in other.0 {
            *self.0.entry(k).or_insert(0) += v;
        }
        self.0.retain(|_, v| *v != 0);
        self
    }

    fn scale(mut self, c: i64) -> Self {
        self.0.values_mut().for_each(|v| *v *= c);
        self.0.retain(|_, v| *v != 0);
        self
    }

    fn push(self, phi: &str) -> Self {
        NormalForm(
            self.0
                .into_iter()
                .map(|((mut chain, b), v)| {
                    chain.insert(0, phi.to_string());
                    ((chain, b), v)
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        // ε terms first, matching the usual J[ε] − J[ρ] reading.
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by_key(|((chain, b), _)| (!matches!(b, Base::Epsilon), chain.clone(), b.clone()));
        for (i, ((chain, base), &c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "−" } else { "+" };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("−")?,
                _ => write!(f, " {sign} ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            for phi in chain {
                write!(f, "{phi}_*")?;
            }
            match base {
                Base::Atom(a) => write!(f, "J[{a}]")?,
                Base::Epsilon => f.write_str("J[ε]")?,
            }
        }
        Ok(())
    }
}

impl JTerm {
    pub fn j(c: ClassTerm) -> JTerm {
        JTerm::J(c)
    }

    fn children(&self) -> Vec<&JTerm> {
        match self {
            JTerm::Push(_, t) | JTerm::Neg(t) | JTerm::Scale(_, t) => vec![t],
            JTerm::Sum(ts) => ts.iter().collect(),
            JTerm::Zero | JTerm::J(_) => vec![],
        }
    }

    fn child_mut(&mut self, i: usize) -> &mut JTerm {
        match self {
            JTerm::Push(_, t) | JTerm::Neg(t) | JTerm::Scale(_, t) => t,
            JTerm::Sum(ts) => &mut ts[i],
            JTerm::Zero | JTerm::J(_) => unreachable!("leaf"),
        }
    }

    fn rules_here(&self, ctx: JContext) -> Vec<Rule> {
        match self {
            JTerm::J(c) => match c {
                ClassTerm::Sum(_) => vec![Rule::JSum],
                ClassTerm::Neg(_) => vec![Rule::JNeg],
                ClassTerm::Compose(..) => vec![Rule::JCompose],
                ClassTerm::Const(_) if ctx.x_is_suspension => vec![Rule::JConstToEpsilon, Rule::JConstVanishes],
                ClassTerm::Const(_) => vec![Rule::JConstToEpsilon],
                ClassTerm::Epsilon if ctx.x_is_suspension => vec![Rule::JEpsilonVanishes],
                _ => vec![],
            },
            JTerm::Push(_, t) => match **t {
                JTerm::Sum(_) => vec![Rule::PushSum],
                JTerm::Neg(_) => vec![Rule::PushNeg],
                JTerm::Scale(..) => vec![Rule::PushScale],
                JTerm::Zero => vec![Rule::PushZero],
                _ => vec![],
            },
            _ => vec![],
        }
    }

    fn apply_rule(&self, rule: Rule) -> JTerm {
        match (rule, self) {
            (Rule::JSum, JTerm::J(ClassTerm::Sum(cs))) => JTerm::Sum(cs.iter().cloned().map(JTerm::J).collect()),
            (Rule::JNeg, JTerm::J(ClassTerm::Neg(c))) => JTerm::Neg(Box::new(JTerm::J((**c).clone()))),
            (Rule::JCompose, JTerm::J(ClassTerm::Compose(phi, c))) => {
                JTerm::Push(phi.clone(), Box::new(JTerm::J((**c).clone())))
            }
            (Rule::JConstToEpsilon, JTerm::J(ClassTerm::Const(phi))) => {
                JTerm::Push(phi.clone(), Box::new(JTerm::J(ClassTerm::Epsilon)))
            }
            (Rule::JConstVanishes | Rule::JEpsilonVanishes | Rule::PushZero, _) => JTerm::Zero,
            (Rule::PushSum, JTerm::Push(phi, t)) => match &**t {
                JTerm::Sum(ts) => JTerm::Sum(ts.iter().map(|t| JTerm::Push(phi.clone(), Box::new(t.clone()))).collect()),
                _ => unreachable!(),
            },
            (Rule::PushNeg, JTerm::Push(phi, t)) => match &**t {
                JTerm::Neg(u) => JTerm::Neg(Box::new(JTerm::Push(phi.clone(), u.clone()))),
                _ => unreachable!(),
            },
            (Rule::PushScale, JTerm::Push(phi, t)) => match &**t {
                JTerm::Scale(k, u) => JTerm::Scale(*k, Box::new(JTerm::Push(phi.clone(), u.clone()))),
                _ => unreachable!(),
            },
            _ => unreachable!("rule {rule:?} does not match"),
        }
    }

    fn redexes(&self, ctx: JContext, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Rule)>) {
        for r in self.rules_here(ctx) {
            out.push((path.clone(), r));
        }
        for (i, c) in self.children().into_iter().enumerate() {
            path.push(i);
            c.redexes(ctx, path, out);
            path.pop();
        }
    }

    fn rewrite_at(&mut self, path: &[usize], rule: Rule) {
        match path.split_first() {
            None => *self = self.apply_rule(rule),
            Some((&i, rest)) => self.child_mut(i).rewrite_at(rest, rule),
        }
    }

    /// Rewrites until no rule applies, choosing among redexes with `pick`
    /// (called with the number of redexes, returns an index). Returns the
    /// number of steps.
    pub fn rewrite_with(&mut self, ctx: JContext, mut pick: impl FnMut(usize) -> usize) -> usize {
        let mut steps = 0;
        loop {
            let mut out = vec![];
            self.redexes(ctx, &mut vec![], &mut out);
            if out.is_empty() {
                return steps;
            }
            let (path, rule) = out.swap_remove(pick(out.len()) % out.len());
            self.rewrite_at(&path, rule);
            steps += 1;
        }
    }

    /// Reads off the linear combination of an irreducible term.
    fn collect(&self) -> NormalForm {
        match self {
            JTerm::Zero => NormalForm::default(),
            JTerm::J(ClassTerm::Atom(a)) => NormalForm::single(vec![], Base::Atom(a.clone())),
            JTerm::J(ClassTerm::Epsilon) => NormalForm::single(vec![], Base::Epsilon),
            JTerm::J(c) => panic!("reducible J term {c:?} in collect"),
            JTerm::Push(phi, t) => t.collect().push(phi),
            JTerm::Sum(ts) => ts.iter().fold(NormalForm::default(), |acc, t| acc.add(t.collect())),
            JTerm::Neg(t) => t.collect().scale(-1),
            JTerm::Scale(k, t) => t.collect().scale(*k),
        }
    }

    /// Normal form under leftmost-outermost rewriting.
    pub fn normalize(&self, ctx: JContext) -> NormalForm {
        let mut t = self.clone();
        t.rewrite_with(ctx, |_| 0);
        t.collect()
    }

    /// Normal form under a random rewrite order.
    pub fn normalize_random<R: Rng>(&self, ctx: JContext, rng: &mut R) -> NormalForm {
        let mut t = self.clone();
        t.rewrite_with(ctx, |k| rng.gen_range(0..k));
        t.collect()
    }
}

/// Direct denotation of a term, without rewriting. Used as an oracle.
pub fn evaluate(t: &JTerm, ctx: JContext) -> NormalForm {
    fn class(c: &ClassTerm, chain: &[String], ctx: JContext) -> NormalForm {
        match c {
            ClassTerm::Atom(a) => NormalForm::single(chain.to_vec(), Base::Atom(a.clone())),
            ClassTerm::Epsilon if ctx.x_is_suspension => NormalForm::default(),
            ClassTerm::Epsilon => NormalForm::single(chain.to_vec(), Base::Epsilon),
            ClassTerm::Const(phi) | ClassTerm::Compose(phi, _) => {
                let mut ch = chain.to_vec();
                ch.push(phi.clone());
                match c {
                    ClassTerm::Compose(_, inner) => class(inner, &ch, ctx),
                    _ => class(&ClassTerm::Epsilon, &ch, ctx),
                }
            }
            ClassTerm::Sum(cs) => cs.iter().fold(NormalForm::default(), |acc, c| acc.add(class(c, chain, ctx))),
            ClassTerm::Neg(c) => class(c, chain, ctx).scale(-1),
        }
    }
    match t {
        JTerm::Zero => NormalForm::default(),
        JTerm::J(c) => class(c, &[], ctx),
        JTerm::Push(phi, u) => evaluate(u, ctx).push(phi),
        JTerm::Sum(ts) => ts.iter().fold(NormalForm::default(), |acc, u| acc.add(evaluate(u, ctx))),
        JTerm::Neg(u) => evaluate(u, ctx).scale(-1),
        JTerm::Scale(k, u) => evaluate(u, ctx).scale(*k),
    }
}

const ATOMS: [&str; 3] = ["ρ", "ρ₁", "ρ₂"];
const MAPS: [&str; 3] = ["φ", "ψ", "χ"];

pub fn random_class<R: Rng>(rng: &mut R, depth: u32) -> ClassTerm {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => ClassTerm::Epsilon,
            1 => ClassTerm::Const(MAPS[rng.gen_range(0..MAPS.len())].into()),
            _ => ClassTerm::Atom(ATOMS[rng.gen_range(0..ATOMS.len())].into()),
        };
    }
    match rng.gen_range(0..3) {
        0 => ClassTerm::Compose(MAPS[rng.gen_range(0..MAPS.len())].into(), Box::new(random_class(rng, depth - 1))),
        1 => ClassTerm::Sum((0..rng.gen_range(1..4)).map(|_| random_class(rng, depth - 1)).collect()),
        _ => ClassTerm::Neg(Box::new(random_class(rng, depth - 1))),
    }
}

pub fn random_term<R: Rng>(rng: &mut R, depth: u32) -> JTerm {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return if rng.gen_bool(0.1) { JTerm::Zero } else { JTerm::J(random_class(rng, 3)) };
    }
    match rng.gen_range(0..4) {
        0 => JTerm::Push(MAPS[rng.gen_range(0..MAPS.len())].into(), Box::new(random_term(rng, depth - 1))),
        1 => JTerm::Sum((0..rng.gen_range(1..4)).map(|_| random_term(rng, depth - 1)).collect()),
        2 => JTerm::Neg(Box::new(random_term(rng, depth - 1))),
        _ => JTerm::Scale(rng.gen_range(-3..=3), Box::new(random_term(rng, depth - 1))),
    }
}

/// {Id, Id}_s = J[ε] − J[ρ], reduced according to whether X is a suspension.
pub fn clutching_brace_formula(x_is_suspension: bool) -> NormalForm {
    let t = JTerm::Sum(vec![
        JTerm::J(ClassTerm::Epsilon),
        JTerm::Neg(Box::new(JTerm::J(ClassTerm::Atom("ρ".into())))),
    ]);
    t.normalize(JContext { x_is_suspension })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn brace_formula() {
        assert_eq!(clutching_brace_formula(true).to_string(), "−J[ρ]");
        assert_eq!(clutching_brace_formula(false).to_string(), "J[ε] − J[ρ]");
    }

    #[test]
    fn naturality_and_const() {
        let ctx = JContext { x_is_suspension: false };
        let t = JTerm::J(ClassTerm::Compose("φ".into(), Box::new(ClassTerm::Epsilon)));
        let c = JTerm::J(ClassTerm::Const("φ".into()));
        assert_eq!(t.normalize(ctx), c.normalize(ctx));
        assert_eq!(c.normalize(ctx).to_string(), "φ_*J[ε]");
        assert!(c.normalize(JContext { x_is_suspension: true }).is_zero());
    }

    #[test]
    fn random_orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let t = random_term(&mut rng, 4);
            for susp in [false, true] {
                let ctx = JContext { x_is_suspension: susp };
                let nf = t.normalize(ctx);
                assert_eq!(nf, evaluate(&t, ctx));
                assert_eq!(nf, t.normalize_random(ctx, &mut rng));
            }
        }
    }
}
