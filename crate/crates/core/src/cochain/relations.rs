//! The seventeen Ann-structure relations and the regularity condition.
//!
//! Every relation is expressed as a residual `lhs - rhs`, written out as a
//! signed sum of terms `l · f_c(args) · r`. The same term lists drive the
//! pointwise checks here and the constraint matrices in the cohomology module.

use super::{Cochain, Cochain3, Component};
use crate::algebra::{Bimodule, FiniteRing};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Number reported for the regularity condition `eta(x,x) = 0`.
pub const REGULARITY: u8 = 18;

/// Relation numbers with the number of arguments each one quantifies over.
pub const RELATIONS: [(u8, usize); 18] = [
    (1, 4),
    (2, 3),
    (3, 3),
    (4, 2),
    (5, 3),
    (6, 3),
    (7, 4),
    (8, 4),
    (9, 4),
    (10, 4),
    (11, 4),
    (12, 4),
    (13, 4),
    (14, 3),
    (15, 3),
    (16, 3),
    (17, 3),
    (REGULARITY, 1),
];

/// `sign · left · f_comp(args) · right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub comp: Component,
    pub args: [usize; 3],
}

struct Builder<'a> {
    ring: &'a FiniteRing,
    out: &'a mut Vec<Term>,
}

impl Builder<'_> {
    fn push(&mut self, sign: i8, left: Option<usize>, comp: Component, args: [usize; 3], right: Option<usize>) {
        self.out.push(Term { sign, left, right, comp, args });
    }
    fn p(&mut self, c: Component, args: [usize; 3]) {
        self.push(1, None, c, args, None);
    }
    fn m(&mut self, c: Component, args: [usize; 3]) {
        self.push(-1, None, c, args, None);
    }
    fn a(&self, x: usize, y: usize) -> usize {
        self.ring.add(x, y)
    }
    fn x(&self, x: usize, y: usize) -> usize {
        self.ring.mul(x, y)
    }
}

/// Whether relation `rel` constrains the tuple at all. The vanishing
/// relations only apply where their hypothesis holds.
pub fn relation_applies(ring: &FiniteRing, rel: u8, t: &[usize]) -> bool {
    let one = ring.unit();
    let any = |v: usize| t.contains(&v);
    match rel {
        2 | 15 => any(0),
        14 => any(one),
        16 => t[0] == one || any(0),
        17 => t[2] == one || any(0),
        _ => true,
    }
}

/// Appends the residual terms of relation `rel` at tuple `t` (Ann-structure side).
pub fn relation_terms(ring: &FiniteRing, rel: u8, t: &[usize], out: &mut Vec<Term>) {
    use Component::{Alpha as A, Eta as E, Lambda as L, Rho as P, Zeta as Z};
    let mut b = Builder { ring, out };
    let g = |i: usize| t.get(i).copied().unwrap_or(0);
    let (x, y, z, w) = (g(0), g(1), g(2), g(3));
    match rel {
        1 => {
            b.p(Z, [y, z, w]);
            b.m(Z, [b.a(x, y), z, w]);
            b.p(Z, [x, b.a(y, z), w]);
            b.m(Z, [x, y, b.a(z, w)]);
            b.p(Z, [x, y, z]);
        }
        2 => b.p(Z, [x, y, z]),
        3 => {
            b.p(Z, [x, y, z]);
            b.m(Z, [x, z, y]);
            b.p(Z, [z, x, y]);
            b.m(E, [x, z, 0]);
            b.p(E, [b.a(x, y), z, 0]);
            b.m(E, [y, z, 0]);
        }
        4 => {
            b.p(E, [x, y, 0]);
            b.p(E, [y, x, 0]);
        }
        5 => {
            b.push(1, Some(x), E, [y, z, 0], None);
            b.m(E, [b.x(x, y), b.x(x, z), 0]);
            b.m(L, [x, y, z]);
            b.p(L, [x, z, y]);
        }
        6 => {
            b.push(1, None, E, [x, y, 0], Some(z));
            b.m(E, [b.x(x, z), b.x(y, z), 0]);
            b.m(P, [x, y, z]);
            b.p(P, [y, x, z]);
        }
        7 => {
            b.push(1, Some(x), Z, [y, z, w], None);
            b.m(Z, [b.x(x, y), b.x(x, z), b.x(x, w)]);
            b.m(L, [x, z, w]);
            b.p(L, [x, b.a(y, z), w]);
            b.m(L, [x, y, b.a(z, w)]);
            b.p(L, [x, y, z]);
        }
        8 => {
            b.push(1, None, Z, [x, y, z], Some(w));
            b.m(Z, [b.x(x, w), b.x(y, w), b.x(z, w)]);
            b.m(P, [y, z, w]);
            b.p(P, [b.a(x, y), z, w]);
            b.m(P, [x, b.a(y, z), w]);
            b.p(P, [x, y, w]);
        }
        9 => {
            let (xz, xw, yz, yw) = (b.x(x, z), b.x(x, w), b.x(y, z), b.x(y, w));
            b.p(P, [x, y, b.a(z, w)]);
            b.m(P, [x, y, z]);
            b.m(P, [x, y, w]);
            b.p(L, [x, z, w]);
            b.p(L, [y, z, w]);
            b.m(L, [b.a(x, y), z, w]);
            b.p(Z, [b.a(xz, xw), yz, yw]);
            b.m(Z, [xz, xw, yz]);
            b.p(E, [xw, yz, 0]);
            b.m(Z, [b.a(xz, yz), xw, yw]);
            b.p(Z, [xz, yz, xw]);
        }
        10 => {
            b.p(A, [x, y, b.a(z, w)]);
            b.m(A, [x, y, z]);
            b.m(A, [x, y, w]);
            b.push(-1, Some(x), L, [y, z, w], None);
            b.m(L, [x, b.x(y, z), b.x(y, w)]);
            b.p(L, [b.x(x, y), z, w]);
        }
        11 => {
            b.p(A, [x, b.a(y, z), w]);
            b.m(A, [x, y, w]);
            b.m(A, [x, z, w]);
            b.push(-1, Some(x), P, [y, z, w], None);
            b.p(P, [b.x(x, y), b.x(x, z), w]);
            b.m(L, [x, b.x(y, w), b.x(z, w)]);
            b.push(1, None, L, [x, y, z], Some(w));
        }
        12 => {
            b.p(A, [b.a(x, y), z, w]);
            b.m(A, [x, z, w]);
            b.m(A, [y, z, w]);
            b.push(1, None, P, [x, y, z], Some(w));
            b.p(P, [b.x(x, z), b.x(y, z), w]);
            b.m(P, [x, y, b.x(z, w)]);
        }
        13 => {
            b.push(1, Some(x), A, [y, z, w], None);
            b.m(A, [b.x(x, y), z, w]);
            b.p(A, [x, b.x(y, z), w]);
            b.m(A, [x, y, b.x(z, w)]);
            b.push(1, None, A, [x, y, z], Some(w));
        }
        14 | 15 => b.p(A, [x, y, z]),
        16 => b.p(L, [x, y, z]),
        17 => b.p(P, [x, y, z]),
        REGULARITY => b.p(E, [x, x, 0]),
        _ => panic!("no relation numbered {rel}"),
    }
}

/// Value of a term list on a 3-cochain.
pub fn evaluate_terms(m: &Bimodule, f: &Cochain3, terms: &[Term]) -> usize {
    terms.iter().fold(0, |acc, t| {
        let mut v = f.value(t.comp, t.args);
        if let Some(l) = t.left {
            v = m.left(l, v);
        }
        if let Some(r) = t.right {
            v = m.right(v, r);
        }
        if t.sign < 0 {
            m.sub(acc, v)
        } else {
            m.add(acc, v)
        }
    })
}

/// Calls `visit(rel, tuple)` for every constrained instance, in report order.
pub fn for_each_instance(ring: &FiniteRing, include_regularity: bool, mut visit: impl FnMut(u8, &[usize]) -> bool) {
    let n = ring.order();
    let mut t = [0usize; 4];
    for &(rel, arity) in RELATIONS.iter() {
        if rel == REGULARITY && !include_regularity {
            continue;
        }
        let total = n.pow(arity as u32);
        for idx in 0..total {
            let mut k = idx;
            for i in (0..arity).rev() {
                t[i] = k % n;
                k /= n;
            }
            if relation_applies(ring, rel, &t[..arity]) && !visit(rel, &t[..arity]) {
                return;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub relation: u8,
    pub tuple: Vec<usize>,
    /// module element index of the residual
    pub residual: usize,
}

/// Violations sorted by relation number, then tuple.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct relation numbers that fail.
    pub fn failing_relations(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.violations.iter().map(|v| v.relation).collect();
        v.dedup();
        v
    }
}

fn check(m: &Bimodule, f: &Cochain3, regularity: bool, stop_early: bool) -> RelationReport {
    let mut report = RelationReport::default();
    let mut terms = Vec::with_capacity(16);
    for_each_instance(m.ring(), regularity, |rel, t| {
        terms.clear();
        relation_terms(m.ring(), rel, t, &mut terms);
        let r = evaluate_terms(m, f, &terms);
        if r != 0 {
            report.violations.push(Violation { relation: rel, tuple: t.to_vec(), residual: r });
            return !stop_early;
        }
        true
    });
    report
}

/// Checks relations 1 to 17 at every tuple for Ann-structure data `f`.
pub fn is_ann_structure(m: &Bimodule, f: &Cochain3) -> RelationReport {
    check(m, f, false, false)
}

/// Short-circuiting form of [`is_ann_structure`].
pub fn satisfies_relations(m: &Bimodule, f: &Cochain3) -> bool {
    check(m, f, false, true).passed()
}

/// Cocycle test: relations 1 to 17 on the flipped data plus `eta(x,x) = 0`.
pub fn is_cocycle3(m: &Bimodule, f: &Cochain3) -> RelationReport {
    check(m, &flip_lambda(m, f), true, false)
}

/// Negates the `lambda` table. This is the only place where the sign
/// difference between cocycle data and Ann-structure data is applied.
pub fn flip_lambda(m: &Bimodule, f: &Cochain3) -> Cochain3 {
    let mut g = f.clone();
    for v in g.lambda.iter_mut() {
        *v = m.neg(*v);
    }
    g
}

/// Data `(xi, eta, alpha, lambda, rho)` satisfying all seventeen relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnStructure(Cochain3);

impl AnnStructure {
    pub fn new(m: &Bimodule, f: Cochain3) -> Result<Self> {
        f.check_shape(m)?;
        let report = check(m, &f, false, true);
        match report.violations.first() {
            None => Ok(AnnStructure(f)),
            Some(v) => Err(Error::Axiom {
                structure: "Ann-structure",
                axiom: format!("relation {}", v.relation),
                witness: v.tuple.clone(),
            }),
        }
    }

    /// The structure whose cocycle is `f`; fails unless `f` is a 3-cocycle.
    pub fn from_cocycle(m: &Bimodule, f: &Cochain3) -> Result<Self> {
        f.check_shape(m)?;
        let report = is_cocycle3(m, f);
        if let Some(v) = report.violations.first() {
            return Err(Error::NotCocycle(format!("3-cocycle: relation {} fails at {:?}", v.relation, v.tuple)));
        }
        Ok(AnnStructure(flip_lambda(m, f)))
    }

    pub fn tables(&self) -> &Cochain3 {
        &self.0
    }

    pub fn into_tables(self) -> Cochain3 {
        self.0
    }

    pub fn to_cocycle(&self, m: &Bimodule) -> Cochain3 {
        flip_lambda(m, &self.0)
    }

    pub fn is_regular(&self) -> bool {
        let n = self.0.ring_order();
        (0..n).all(|x| self.0.eta(x, x) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteRing;

    fn z2() -> Bimodule {
        Bimodule::regular(&FiniteRing::cyclic(2).unwrap())
    }

    #[test]
    fn zero_passes() {
        let m = z2();
        assert!(is_ann_structure(&m, &Cochain3::zero(2)).passed());
        assert!(is_cocycle3(&m, &Cochain3::zero(2)).passed());
    }

    #[test]
    fn eta_breaks_relation_nine() {
        let m = z2();
        let mut f = Cochain3::zero(2);
        f.set(1, &[1, 1], 1);
        let r = is_ann_structure(&m, &f);
        assert!(r.violations.iter().any(|v| v.relation == 9 && v.tuple == [1, 1, 1, 1] && v.residual == 1));
        let c = is_cocycle3(&m, &f);
        assert!(c.violations.iter().any(|v| v.relation == REGULARITY && v.tuple == [1]));
    }

    #[test]
    fn zeta_breaks_relation_three() {
        let m = z2();
        let mut f = Cochain3::zero(2);
        f.set(0, &[1, 1, 1], 1);
        let r = is_ann_structure(&m, &f);
        assert!(r.violations.iter().any(|v| v.relation == 3 && v.tuple == [1, 1, 1] && v.residual == 1));
    }

    #[test]
    fn report_is_sorted() {
        let r = FiniteRing::cyclic(3).unwrap();
        let m = Bimodule::regular(&r);
        let mut f = Cochain3::zero(3);
        f.set(1, &[1, 2], 1);
        f.set(3, &[1, 1, 1], 2);
        f.set(2, &[0, 1, 2], 1);
        let rep = is_cocycle3(&m, &f);
        let keys: Vec<_> = rep.violations.iter().map(|v| (v.relation, v.tuple.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(rep.failing_relations().contains(&15));
        assert!(rep.failing_relations().contains(&16));
    }

    #[test]
    fn ann_structure_rejects() {
        let m = z2();
        let mut f = Cochain3::zero(2);
        f.set(0, &[1, 1, 1], 1);
        assert!(matches!(AnnStructure::new(&m, f), Err(Error::Axiom { .. })));
        assert!(AnnStructure::new(&m, Cochain3::zero(2)).unwrap().is_regular());
    }
}
