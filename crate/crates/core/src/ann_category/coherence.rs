//! Exhaustive coherence checking.
//!
//! Each axiom is a pair of parallel composites of structure morphisms,
//! written over object expressions in a few variables. The composites are
//! type-checked symbolically, then evaluated at every tuple of objects by the
//! morphism arithmetic of the category: composition and `+` add labels,
//! `(s,u) x (t,v)` has label `sv + ut`. Nothing here refers to the relation
//! list of the cochain module; agreement between the two is tested.

use super::AnnCategoryRM;
use crate::algebra::{Bimodule, FiniteRing};
use crate::cochain::{Cochain3, Component};
use serde::{Deserialize, Serialize};

/// Object expressions over variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obj {
    Var(usize),
    Zero,
    One,
    Sum(Box<Obj>, Box<Obj>),
    Prod(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn eval(&self, ring: &FiniteRing, vals: &[usize]) -> usize {
        match self {
            Obj::Var(i) => vals[*i],
            Obj::Zero => 0,
            Obj::One => ring.unit(),
            Obj::Sum(a, b) => ring.add(a.eval(ring, vals), b.eval(ring, vals)),
            Obj::Prod(a, b) => ring.mul(a.eval(ring, vals), b.eval(ring, vals)),
        }
    }
}

/// Morphism expressions. The unit and zero maps are identities in a category
/// of type `(R, M)`; they still matter for typing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mor {
    Id(Obj),
    /// `A + (B + C) -> (A + B) + C`
    AssocPlus(Obj, Obj, Obj),
    /// `A + B -> B + A`
    Comm(Obj, Obj),
    /// `A(BC) -> (AB)C`
    AssocTimes(Obj, Obj, Obj),
    /// `A(B + C) -> AB + AC`
    DistLeft(Obj, Obj, Obj),
    /// `(A + B)C -> AC + BC`
    DistRight(Obj, Obj, Obj),
    /// `0 + A -> A`
    ZeroPlusLeft(Obj),
    /// `A + 0 -> A`
    ZeroPlusRight(Obj),
    /// `1A -> A`
    OneTimesLeft(Obj),
    /// `A1 -> A`
    OneTimesRight(Obj),
    /// `0A -> 0`
    AnnihilateLeft(Obj),
    /// `A0 -> 0`
    AnnihilateRight(Obj),
    Inv(Box<Mor>),
    /// first, then second
    Then(Box<Mor>, Box<Mor>),
    Oplus(Box<Mor>, Box<Mor>),
    Otimes(Box<Mor>, Box<Mor>),
}

fn sum(a: Obj, b: Obj) -> Obj {
    Obj::Sum(Box::new(a), Box::new(b))
}

fn prod(a: Obj, b: Obj) -> Obj {
    Obj::Prod(Box::new(a), Box::new(b))
}

impl Mor {
    /// `(source, target)`, or a description of the first ill-typed composite.
    pub fn typecheck(&self) -> Result<(Obj, Obj), String> {
        use Mor::*;
        Ok(match self {
            Id(a) => (a.clone(), a.clone()),
            AssocPlus(a, b, c) => {
                (sum(a.clone(), sum(b.clone(), c.clone())), sum(sum(a.clone(), b.clone()), c.clone()))
            }
            Comm(a, b) => (sum(a.clone(), b.clone()), sum(b.clone(), a.clone())),
            AssocTimes(a, b, c) => {
                (prod(a.clone(), prod(b.clone(), c.clone())), prod(prod(a.clone(), b.clone()), c.clone()))
            }
            DistLeft(a, b, c) => (
                prod(a.clone(), sum(b.clone(), c.clone())),
                sum(prod(a.clone(), b.clone()), prod(a.clone(), c.clone())),
            ),
            DistRight(a, b, c) => (
                prod(sum(a.clone(), b.clone()), c.clone()),
                sum(prod(a.clone(), c.clone()), prod(b.clone(), c.clone())),
            ),
            ZeroPlusLeft(a) => (sum(Obj::Zero, a.clone()), a.clone()),
            ZeroPlusRight(a) => (sum(a.clone(), Obj::Zero), a.clone()),
            OneTimesLeft(a) => (prod(Obj::One, a.clone()), a.clone()),
            OneTimesRight(a) => (prod(a.clone(), Obj::One), a.clone()),
            AnnihilateLeft(a) => (prod(Obj::Zero, a.clone()), Obj::Zero),
            AnnihilateRight(a) => (prod(a.clone(), Obj::Zero), Obj::Zero),
            Inv(f) => {
                let (s, t) = f.typecheck()?;
                (t, s)
            }
            Then(f, g) => {
                let (s1, t1) = f.typecheck()?;
                let (s2, t2) = g.typecheck()?;
                if t1 != s2 {
                    return Err(format!("cannot compose: {t1:?} is not {s2:?}"));
                }
                (s1, t2)
            }
            Oplus(f, g) => {
                let (s1, t1) = f.typecheck()?;
                let (s2, t2) = g.typecheck()?;
                (sum(s1, s2), sum(t1, t2))
            }
            Otimes(f, g) => {
                let (s1, t1) = f.typecheck()?;
                let (s2, t2) = g.typecheck()?;
                (prod(s1, s2), prod(t1, t2))
            }
        })
    }

    fn source(&self) -> Obj {
        self.typecheck().expect("diagrams are type-checked on construction").0
    }

    /// Appends the label of `l · self · r`, scaled by `coef`, as linear terms.
    fn compile(&self, ring: &FiniteRing, vals: &[usize], coef: i64, l: usize, r: usize, out: &mut Vec<LinTerm>) {
        use Mor::*;
        let e = |o: &Obj| o.eval(ring, vals);
        let mut push = |comp, args: [usize; 3]| out.push(LinTerm { comp, args, left: l, right: r, coef });
        match self {
            AssocPlus(a, b, c) => push(Component::Zeta, [e(a), e(b), e(c)]),
            Comm(a, b) => push(Component::Eta, [e(a), e(b), 0]),
            AssocTimes(a, b, c) => push(Component::Alpha, [e(a), e(b), e(c)]),
            DistLeft(a, b, c) => push(Component::Lambda, [e(a), e(b), e(c)]),
            DistRight(a, b, c) => push(Component::Rho, [e(a), e(b), e(c)]),
            Id(_) | ZeroPlusLeft(_) | ZeroPlusRight(_) | OneTimesLeft(_) | OneTimesRight(_)
            | AnnihilateLeft(_) | AnnihilateRight(_) => {}
            Inv(f) => f.compile(ring, vals, -coef, l, r, out),
            Then(f, g) | Oplus(f, g) => {
                f.compile(ring, vals, coef, l, r, out);
                g.compile(ring, vals, coef, l, r, out);
            }
            Otimes(f, g) => {
                // label(f x g) = s · label(g) + label(f) · t
                let s = e(&f.source());
                let t = e(&g.source());
                g.compile(ring, vals, coef, ring.mul(l, s), r, out);
                f.compile(ring, vals, coef, l, ring.mul(t, r), out);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct LinTerm {
    comp: Component,
    args: [usize; 3],
    left: usize,
    right: usize,
    coef: i64,
}

/// Two parallel composites that must agree.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub name: &'static str,
    pub vars: usize,
    pub lhs: Mor,
    pub rhs: Mor,
}

impl Diagram {
    fn new(name: &'static str, vars: usize, lhs: Mor, rhs: Mor) -> Self {
        let (s1, t1) = lhs.typecheck().unwrap_or_else(|e| panic!("{name}: {e}"));
        let (s2, t2) = rhs.typecheck().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(s1 == s2 && t1 == t2, "{name}: the two sides are not parallel");
        Diagram { name, vars, lhs, rhs }
    }
}

mod build {
    use super::{prod, sum, Mor, Obj};

    pub fn v(i: usize) -> Obj {
        Obj::Var(i)
    }
    pub fn s(a: &Obj, b: &Obj) -> Obj {
        sum(a.clone(), b.clone())
    }
    pub fn p(a: &Obj, b: &Obj) -> Obj {
        prod(a.clone(), b.clone())
    }
    pub fn id(a: &Obj) -> Mor {
        Mor::Id(a.clone())
    }
    pub fn ap(a: &Obj, b: &Obj, c: &Obj) -> Mor {
        Mor::AssocPlus(a.clone(), b.clone(), c.clone())
    }
    pub fn cm(a: &Obj, b: &Obj) -> Mor {
        Mor::Comm(a.clone(), b.clone())
    }
    pub fn at(a: &Obj, b: &Obj, c: &Obj) -> Mor {
        Mor::AssocTimes(a.clone(), b.clone(), c.clone())
    }
    pub fn dl(a: &Obj, b: &Obj, c: &Obj) -> Mor {
        Mor::DistLeft(a.clone(), b.clone(), c.clone())
    }
    pub fn dr(a: &Obj, b: &Obj, c: &Obj) -> Mor {
        Mor::DistRight(a.clone(), b.clone(), c.clone())
    }
    pub fn zl(a: &Obj) -> Mor {
        Mor::ZeroPlusLeft(a.clone())
    }
    pub fn zr(a: &Obj) -> Mor {
        Mor::ZeroPlusRight(a.clone())
    }
    pub fn ul(a: &Obj) -> Mor {
        Mor::OneTimesLeft(a.clone())
    }
    pub fn ur(a: &Obj) -> Mor {
        Mor::OneTimesRight(a.clone())
    }
    pub fn nl(a: &Obj) -> Mor {
        Mor::AnnihilateLeft(a.clone())
    }
    pub fn nr(a: &Obj) -> Mor {
        Mor::AnnihilateRight(a.clone())
    }
    pub fn inv(f: Mor) -> Mor {
        Mor::Inv(Box::new(f))
    }
    pub fn op(f: Mor, g: Mor) -> Mor {
        Mor::Oplus(Box::new(f), Box::new(g))
    }
    pub fn ot(f: Mor, g: Mor) -> Mor {
        Mor::Otimes(Box::new(f), Box::new(g))
    }
    pub fn seq(fs: Vec<Mor>) -> Mor {
        fs.into_iter().reduce(|f, g| Mor::Then(Box::new(f), Box::new(g))).expect("nonempty composite")
    }

    /// `(P+Q)+(R+S) -> (P+R)+(Q+S)` from associativity and one symmetry.
    pub fn interchange(pp: &Obj, q: &Obj, r: &Obj, ss: &Obj) -> Mor {
        seq(vec![
            inv(ap(pp, q, &s(r, ss))),
            op(id(pp), seq(vec![ap(q, r, ss), op(cm(q, r), id(ss)), inv(ap(r, q, ss))])),
            ap(pp, r, &s(q, ss)),
        ])
    }
}

/// The axiom diagrams of a categorical ring with all unit maps identities.
pub fn axiom_diagrams() -> Vec<Diagram> {
    use build::*;
    let (x, y, z, t) = (v(0), v(1), v(2), v(3));
    let (zero, one) = (Obj::Zero, Obj::One);
    let d = Diagram::new;
    vec![
        // the symmetric monoidal structure of +
        d(
            "plus-pentagon",
            4,
            seq(vec![ap(&x, &y, &s(&z, &t)), ap(&s(&x, &y), &z, &t)]),
            seq(vec![op(id(&x), ap(&y, &z, &t)), ap(&x, &s(&y, &z), &t), op(ap(&x, &y, &z), id(&t))]),
        ),
        d("plus-unit-middle", 2, seq(vec![ap(&x, &zero, &y), op(zr(&x), id(&y))]), op(id(&x), zl(&y))),
        d("plus-unit-left", 2, seq(vec![ap(&zero, &x, &y), op(zl(&x), id(&y))]), zl(&s(&x, &y))),
        d("plus-unit-right", 2, seq(vec![ap(&x, &y, &zero), zr(&s(&x, &y))]), op(id(&x), zr(&y))),
        d(
            "hexagon",
            3,
            seq(vec![ap(&x, &y, &z), cm(&s(&x, &y), &z), ap(&z, &x, &y)]),
            seq(vec![op(id(&x), cm(&y, &z)), ap(&x, &z, &y), op(cm(&x, &z), id(&y))]),
        ),
        d("symmetry", 2, seq(vec![cm(&x, &y), cm(&y, &x)]), id(&s(&x, &y))),
        d("comm-unit", 1, seq(vec![cm(&zero, &x), zr(&x)]), zl(&x)),
        // left and right multiplication are symmetric monoidal for +
        d(
            "left-dist-comm",
            3,
            seq(vec![ot(id(&x), cm(&y, &z)), dl(&x, &z, &y)]),
            seq(vec![dl(&x, &y, &z), cm(&p(&x, &y), &p(&x, &z))]),
        ),
        d(
            "right-dist-comm",
            3,
            seq(vec![ot(cm(&x, &y), id(&z)), dr(&y, &x, &z)]),
            seq(vec![dr(&x, &y, &z), cm(&p(&x, &z), &p(&y, &z))]),
        ),
        d(
            "left-dist-assoc",
            4,
            seq(vec![ot(id(&x), ap(&y, &z, &t)), dl(&x, &s(&y, &z), &t), op(dl(&x, &y, &z), id(&p(&x, &t)))]),
            seq(vec![dl(&x, &y, &s(&z, &t)), op(id(&p(&x, &y)), dl(&x, &z, &t)), ap(&p(&x, &y), &p(&x, &z), &p(&x, &t))]),
        ),
        d(
            "right-dist-assoc",
            4,
            seq(vec![ot(ap(&x, &y, &z), id(&t)), dr(&s(&x, &y), &z, &t), op(dr(&x, &y, &t), id(&p(&z, &t)))]),
            seq(vec![dr(&x, &s(&y, &z), &t), op(id(&p(&x, &t)), dr(&y, &z, &t)), ap(&p(&x, &t), &p(&y, &t), &p(&z, &t))]),
        ),
        d(
            "left-dist-zero-scalar",
            2,
            nl(&s(&x, &y)),
            seq(vec![dl(&zero, &x, &y), op(nl(&x), nl(&y)), zl(&zero)]),
        ),
        d(
            "left-dist-zero-left",
            2,
            ot(id(&x), zl(&y)),
            seq(vec![dl(&x, &zero, &y), op(nr(&x), id(&p(&x, &y))), zl(&p(&x, &y))]),
        ),
        d(
            "left-dist-zero-right",
            2,
            ot(id(&x), zr(&y)),
            seq(vec![dl(&x, &y, &zero), op(id(&p(&x, &y)), nr(&x)), zr(&p(&x, &y))]),
        ),
        d("left-dist-unit", 2, ul(&s(&x, &y)), seq(vec![dl(&one, &x, &y), op(ul(&x), ul(&y))])),
        d(
            "right-dist-zero-scalar",
            2,
            nr(&s(&x, &y)),
            seq(vec![dr(&x, &y, &zero), op(nr(&x), nr(&y)), zl(&zero)]),
        ),
        d(
            "right-dist-zero-left",
            2,
            ot(zl(&x), id(&y)),
            seq(vec![dr(&zero, &x, &y), op(nl(&y), id(&p(&x, &y))), zl(&p(&x, &y))]),
        ),
        d(
            "right-dist-zero-right",
            2,
            ot(zr(&x), id(&y)),
            seq(vec![dr(&x, &zero, &y), op(id(&p(&x, &y)), nl(&y)), zr(&p(&x, &y))]),
        ),
        d("right-dist-unit", 2, ur(&s(&x, &y)), seq(vec![dr(&x, &y, &one), op(ur(&x), ur(&y))])),
        // the monoidal structure of x
        d(
            "times-pentagon",
            4,
            seq(vec![at(&x, &y, &p(&z, &t)), at(&p(&x, &y), &z, &t)]),
            seq(vec![ot(id(&x), at(&y, &z, &t)), at(&x, &p(&y, &z), &t), ot(at(&x, &y, &z), id(&t))]),
        ),
        d("times-unit-middle", 2, seq(vec![at(&x, &one, &y), ot(ur(&x), id(&y))]), ot(id(&x), ul(&y))),
        d("times-unit-left", 2, seq(vec![at(&one, &x, &y), ot(ul(&x), id(&y))]), ul(&p(&x, &y))),
        d("times-unit-right", 2, seq(vec![at(&x, &y, &one), ur(&p(&x, &y))]), ot(id(&x), ur(&y))),
        d("times-zero-left", 2, nl(&p(&x, &y)), seq(vec![at(&zero, &x, &y), ot(nl(&x), id(&y)), nl(&y)])),
        d(
            "times-zero-middle",
            2,
            seq(vec![ot(id(&x), nl(&y)), nr(&x)]),
            seq(vec![at(&x, &zero, &y), ot(nr(&x), id(&y)), nl(&y)]),
        ),
        d(
            "times-zero-right",
            2,
            seq(vec![ot(id(&x), nr(&y)), nr(&x)]),
            seq(vec![at(&x, &y, &zero), nr(&p(&x, &y))]),
        ),
        // compatibility of distributivity with associativity and with itself
        {
            let (a, b, x, y) = (v(0), v(1), v(2), v(3));
            d(
                "dist-left-assoc",
                4,
                seq(vec![ot(id(&a), dl(&b, &x, &y)), dl(&a, &p(&b, &x), &p(&b, &y)), op(at(&a, &b, &x), at(&a, &b, &y))]),
                seq(vec![at(&a, &b, &s(&x, &y)), dl(&p(&a, &b), &x, &y)]),
            )
        },
        {
            let (x, y, a, b) = (v(0), v(1), v(2), v(3));
            d(
                "dist-right-assoc",
                4,
                seq(vec![dr(&x, &y, &p(&a, &b)), op(at(&x, &a, &b), at(&y, &a, &b))]),
                seq(vec![at(&s(&x, &y), &a, &b), ot(dr(&x, &y, &a), id(&b)), dr(&p(&x, &a), &p(&y, &a), &b)]),
            )
        },
        {
            let (a, x, y, b) = (v(0), v(1), v(2), v(3));
            d(
                "dist-middle-assoc",
                4,
                seq(vec![ot(id(&a), dr(&x, &y, &b)), dl(&a, &p(&x, &b), &p(&y, &b)), op(at(&a, &x, &b), at(&a, &y, &b))]),
                seq(vec![at(&a, &s(&x, &y), &b), ot(dl(&a, &x, &y), id(&b)), dr(&p(&a, &x), &p(&a, &y), &b)]),
            )
        },
        {
            let (a, b, x, y) = (v(0), v(1), v(2), v(3));
            let (ax, bx, ay, by) = (p(&a, &x), p(&b, &x), p(&a, &y), p(&b, &y));
            d(
                "dist-interchange",
                4,
                seq(vec![
                    dl(&s(&a, &b), &x, &y),
                    op(dr(&a, &b, &x), dr(&a, &b, &y)),
                    interchange(&ax, &bx, &ay, &by),
                ]),
                seq(vec![dr(&a, &b, &s(&x, &y)), op(dl(&a, &x, &y), dl(&b, &x, &y))]),
            )
        },
    ]
}

/// `c_{X,X} = id`.
pub fn regularity_diagram() -> Diagram {
    use build::*;
    let x = v(0);
    Diagram::new("regularity", 1, cm(&x, &x), id(&s(&x, &x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramViolation {
    pub diagram: String,
    pub tuple: Vec<usize>,
    /// module element index of `label(lhs) - label(rhs)`
    pub residual: usize,
}

struct Compiled {
    name: &'static str,
    // (object tuple, residual terms), tuples with an identically zero residual dropped
    instances: Vec<(Vec<usize>, Vec<LinTerm>)>,
}

fn compile(ring: &FiniteRing, d: &Diagram) -> Compiled {
    let n = ring.order();
    let unit = ring.unit();
    let mut instances = Vec::new();
    let total = n.pow(d.vars as u32);
    for idx in 0..total {
        let vals = crate::cochain::unflatten(n, d.vars, idx);
        let mut terms = Vec::new();
        d.lhs.compile(ring, &vals, 1, unit, unit, &mut terms);
        d.rhs.compile(ring, &vals, -1, unit, unit, &mut terms);
        terms.sort_unstable_by_key(|t| (t.comp, t.args, t.left, t.right));
        let mut merged: Vec<LinTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if (last.comp, last.args, last.left, last.right) == (t.comp, t.args, t.left, t.right) => {
                    last.coef += t.coef
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coef != 0);
        if !merged.is_empty() {
            instances.push((vals, merged));
        }
    }
    Compiled { name: d.name, instances }
}

/// All axiom diagrams compiled for one ring, reusable across structures.
pub struct CoherenceChecker {
    ring: FiniteRing,
    axioms: Vec<Compiled>,
    regularity: Compiled,
}

impl CoherenceChecker {
    pub fn new(ring: &FiniteRing) -> Self {
        CoherenceChecker {
            ring: ring.clone(),
            axioms: axiom_diagrams().iter().map(|d| compile(ring, d)).collect(),
            regularity: compile(ring, &regularity_diagram()),
        }
    }

    fn residual(&self, m: &Bimodule, f: &Cochain3, terms: &[LinTerm]) -> usize {
        let unit = self.ring.unit();
        terms.iter().fold(0, |acc, t| {
            let mut v = f.value(t.comp, t.args);
            if t.left != unit {
                v = m.left(t.left, v);
            }
            if t.right != unit {
                v = m.right(v, t.right);
            }
            match t.coef {
                1 => m.add(acc, v),
                -1 => m.sub(acc, v),
                k => m.add(acc, m.times(k, v)),
            }
        })
    }

    fn run(&self, m: &Bimodule, f: &Cochain3, regular: bool, stop_early: bool) -> Vec<DiagramViolation> {
        assert_eq!(m.ring(), &self.ring, "checker compiled for a different ring");
        let mut out = Vec::new();
        let extra = regular.then_some(&self.regularity);
        for c in self.axioms.iter().chain(extra) {
            for (tuple, terms) in &c.instances {
                let r = self.residual(m, f, terms);
                if r != 0 {
                    out.push(DiagramViolation { diagram: c.name.to_string(), tuple: tuple.clone(), residual: r });
                    if stop_early {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// Every failing (diagram, tuple) for structure data `f`.
    pub fn check(&self, m: &Bimodule, f: &Cochain3, regular: bool) -> Vec<DiagramViolation> {
        self.run(m, f, regular, false)
    }

    pub fn passes(&self, m: &Bimodule, f: &Cochain3, regular: bool) -> bool {
        self.run(m, f, regular, true).is_empty()
    }
}

/// Evaluates every axiom diagram of `cat` at every object tuple.
pub fn verify_coherence(cat: &AnnCategoryRM) -> Vec<DiagramViolation> {
    CoherenceChecker::new(cat.ring()).check(cat.module(), cat.structure(), false)
}

/// [`verify_coherence`] together with `c_{X,X} = id`.
pub fn verify_regular_coherence(cat: &AnnCategoryRM) -> Vec<DiagramViolation> {
    CoherenceChecker::new(cat.ring()).check(cat.module(), cat.structure(), true)
}
