//! A small evaluator for string-diagram composites in a skeletal category.
//!
//! A state is a linear combination of splitting trees, i.e. a morphism from
//! a simple object into a bracketed tensor product written in the tree
//! basis. Instructions act on the subtree at a path; since every local move
//! is a morphism, the charge of the subtree is preserved and the rest of the
//! tree is untouched.

use std::collections::BTreeMap;
use std::fmt;

use super::{RibbonError, SkeletalRibbon};
use crate::arith::CycNumber;

/// A splitting tree. Leaves carry simple labels, nodes carry their total charge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LTree {
    Leaf(usize),
    Node(Box<LTree>, Box<LTree>, usize),
}

impl LTree {
    pub fn leaf(a: usize) -> Self {
        Self::Leaf(a)
    }

    pub fn node(l: LTree, r: LTree, charge: usize) -> Self {
        Self::Node(Box::new(l), Box::new(r), charge)
    }

    pub fn charge(&self) -> usize {
        match self {
            Self::Leaf(a) => *a,
            Self::Node(_, _, c) => *c,
        }
    }

    fn at(&self, path: &[Side]) -> Option<&LTree> {
        match (path.split_first(), self) {
            (None, t) => Some(t),
            (Some((Side::L, rest)), Self::Node(l, _, _)) => l.at(rest),
            (Some((Side::R, rest)), Self::Node(_, r, _)) => r.at(rest),
            _ => None,
        }
    }

    fn replace(&self, path: &[Side], with: LTree) -> LTree {
        match (path.split_first(), self) {
            (None, _) => with,
            (Some((Side::L, rest)), Self::Node(l, r, c)) => {
                Self::Node(Box::new(l.replace(rest, with)), r.clone(), *c)
            }
            (Some((Side::R, rest)), Self::Node(l, r, c)) => {
                Self::Node(l.clone(), Box::new(r.replace(rest, with)), *c)
            }
            _ => unreachable!("path checked before replacement"),
        }
    }
}

impl fmt::Display for LTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(a) => write!(f, "{a}"),
            Self::Node(l, r, c) => write!(f, "({l} {r})_{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

/// Local moves. Paths address the subtree the move acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instr {
    /// Unit leaf becomes `(a a*)_1`.
    Coev(Vec<Side>, usize),
    /// `(a* a)_1` made of leaves becomes the unit leaf, times `κ_a`.
    Ev(Vec<Side>, usize),
    /// `X(YZ) → (XY)Z`.
    Assoc(Vec<Side>),
    /// `(XY)Z → X(YZ)`.
    AssocInv(Vec<Side>),
    /// `X ⊗ Y → Y ⊗ X` through the braiding of X past Y.
    Braid(Vec<Side>),
    /// `X ⊗ Y → Y ⊗ X` through the inverse of the braiding of Y past X.
    InverseBraid(Vec<Side>),
    /// The twist on the subtree's total charge.
    Twist(Vec<Side>),
    /// The pivotal isomorphism `a → a**` on a leaf.
    Pivot(Vec<Side>),
    /// `1 ⊗ X → X`.
    LeftUnit(Vec<Side>),
    LeftUnitInv(Vec<Side>),
    /// `X ⊗ 1 → X`.
    RightUnit(Vec<Side>),
    RightUnitInv(Vec<Side>),
}

impl Instr {
    fn path(&self) -> &[Side] {
        match self {
            Self::Coev(p, _)
            | Self::Ev(p, _)
            | Self::Assoc(p)
            | Self::AssocInv(p)
            | Self::Braid(p)
            | Self::InverseBraid(p)
            | Self::Twist(p)
            | Self::Pivot(p)
            | Self::LeftUnit(p)
            | Self::LeftUnitInv(p)
            | Self::RightUnit(p)
            | Self::RightUnitInv(p) => p,
        }
    }
}

pub type State = BTreeMap<LTree, CycNumber>;

pub fn basis_state(t: LTree) -> State {
    let mut s = State::new();
    s.insert(t, CycNumber::one());
    s
}

/// Per-label twists and pivotal scalars, needed only by `Twist` and `Pivot`.
#[derive(Clone, Debug, Default)]
pub struct RibbonScalars {
    pub twist: Vec<CycNumber>,
    pub pivot: Vec<CycNumber>,
}

pub struct Evaluator<'a> {
    cat: &'a SkeletalRibbon,
    scalars: Option<RibbonScalars>,
}

fn fail(msg: String) -> RibbonError {
    RibbonError::Diagram(msg)
}

impl<'a> Evaluator<'a> {
    /// An evaluator for braided and rigid moves only.
    pub fn new(cat: &'a SkeletalRibbon) -> Self {
        Self { cat, scalars: None }
    }

    pub fn with_scalars(cat: &'a SkeletalRibbon, scalars: RibbonScalars) -> Self {
        Self {
            cat,
            scalars: Some(scalars),
        }
    }

    fn local(&self, instr: &Instr, t: &LTree) -> Result<Vec<(LTree, CycNumber)>, RibbonError> {
        let cat = self.cat;
        let ring = cat.ring();
        let unit = ring.unit();
        use LTree::{Leaf, Node};
        Ok(match (instr, t) {
            (Instr::Coev(_, a), Leaf(x)) if *x == unit => {
                vec![(LTree::node(Leaf(*a), Leaf(cat.dual(*a)), unit), CycNumber::one())]
            }
            (Instr::Coev(_, _), _) => return Err(fail(format!("coevaluation needs a unit leaf, found {t}"))),
            (Instr::Ev(_, a), Node(l, r, ch)) => match (l.as_ref(), r.as_ref()) {
                (Leaf(x), Leaf(y)) if *x == cat.dual(*a) && *y == *a => {
                    if *ch == unit {
                        vec![(Leaf(unit), cat.pivotal(*a).clone())]
                    } else {
                        Vec::new()
                    }
                }
                _ => return Err(fail(format!("evaluation of {a} cannot act on {t}"))),
            },
            (Instr::Ev(_, a), _) => return Err(fail(format!("evaluation of {a} cannot act on {t}"))),
            (Instr::Assoc(_), Node(x, yz, d)) => {
                let Node(y, z, f) = yz.as_ref() else {
                    return Err(fail(format!("associator needs a right node in {t}")));
                };
                let (a, b, c) = (x.charge(), y.charge(), z.charge());
                let mut out = Vec::new();
                for e in 0..ring.len() {
                    if ring.n(a, b, e) == 1 && ring.n(e, c, *d) == 1 {
                        let coeff = cat.f_inverse(a, b, c, *d, *f, e);
                        let new = LTree::node(
                            LTree::node(x.as_ref().clone(), y.as_ref().clone(), e),
                            z.as_ref().clone(),
                            *d,
                        );
                        out.push((new, coeff));
                    }
                }
                out
            }
            (Instr::AssocInv(_), Node(xy, z, d)) => {
                let Node(x, y, e) = xy.as_ref() else {
                    return Err(fail(format!("inverse associator needs a left node in {t}")));
                };
                let (a, b, c) = (x.charge(), y.charge(), z.charge());
                let mut out = Vec::new();
                for f in 0..ring.len() {
                    if ring.n(b, c, f) == 1 && ring.n(a, f, *d) == 1 {
                        let coeff = cat.f_symbol(a, b, c, *d, *e, f);
                        let new = LTree::node(
                            x.as_ref().clone(),
                            LTree::node(y.as_ref().clone(), z.as_ref().clone(), f),
                            *d,
                        );
                        out.push((new, coeff));
                    }
                }
                out
            }
            (Instr::Braid(_), Node(x, y, c)) => {
                let coeff = cat.r_symbol(x.charge(), y.charge(), *c);
                vec![(LTree::Node(y.clone(), x.clone(), *c), coeff)]
            }
            (Instr::InverseBraid(_), Node(x, y, c)) => {
                let coeff = cat
                    .r_symbol(y.charge(), x.charge(), *c)
                    .inverse()
                    .ok_or_else(|| fail(format!("inadmissible braiding channel in {t}")))?;
                vec![(LTree::Node(y.clone(), x.clone(), *c), coeff)]
            }
            (Instr::Twist(_), t) => {
                let s = self.scalars.as_ref().ok_or_else(|| fail("twist needs ribbon scalars".into()))?;
                vec![(t.clone(), s.twist[t.charge()].clone())]
            }
            (Instr::Pivot(_), Leaf(a)) => {
                let s = self.scalars.as_ref().ok_or_else(|| fail("pivot needs ribbon scalars".into()))?;
                vec![(t.clone(), s.pivot[*a].clone())]
            }
            (Instr::Pivot(_), _) => return Err(fail(format!("pivotal move needs a leaf, found {t}"))),
            (Instr::LeftUnit(_), Node(l, r, _)) if **l == Leaf(unit) => vec![(r.as_ref().clone(), CycNumber::one())],
            (Instr::RightUnit(_), Node(l, r, _)) if **r == Leaf(unit) => vec![(l.as_ref().clone(), CycNumber::one())],
            (Instr::LeftUnitInv(_), t) => vec![(LTree::node(Leaf(unit), t.clone(), t.charge()), CycNumber::one())],
            (Instr::RightUnitInv(_), t) => vec![(LTree::node(t.clone(), Leaf(unit), t.charge()), CycNumber::one())],
            (i, t) => return Err(fail(format!("{i:?} cannot act on {t}"))),
        })
    }

    pub fn step(&self, state: &State, instr: &Instr) -> Result<State, RibbonError> {
        let path = instr.path();
        let mut out = State::new();
        for (tree, coeff) in state {
            let sub = tree
                .at(path)
                .ok_or_else(|| fail(format!("path {path:?} does not exist in {tree}")))?;
            for (new_sub, c) in self.local(instr, sub)? {
                if c.is_zero() {
                    continue;
                }
                let new_tree = tree.replace(path, new_sub);
                let v = coeff * &c;
                match out.remove(&new_tree) {
                    Some(old) => {
                        let sum = &old + &v;
                        if !sum.is_zero() {
                            out.insert(new_tree, sum);
                        }
                    }
                    None => {
                        out.insert(new_tree, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn run(&self, start: State, program: &[Instr]) -> Result<State, RibbonError> {
        program.iter().try_fold(start, |s, i| self.step(&s, i))
    }

    /// Runs a program that ends on the unit leaf and returns the scalar.
    pub fn scalar(&self, start: LTree, program: &[Instr]) -> Result<CycNumber, RibbonError> {
        let out = self.run(basis_state(start), program)?;
        let unit = LTree::Leaf(self.cat.ring().unit());
        let mut value = CycNumber::zero();
        for (t, c) in out {
            if t != unit {
                return Err(fail(format!("composite does not end on the unit, found {t}")));
            }
            value = c;
        }
        Ok(value)
    }
}

/// Path shorthand: `path("LR")` is `[L, R]`.
pub fn path(s: &str) -> Vec<Side> {
    s.chars()
        .map(|ch| match ch {
            'L' => Side::L,
            'R' => Side::R,
            _ => panic!("path letters are L and R"),
        })
        .collect()
}
