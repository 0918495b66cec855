//! Bimultiplications of a finite ring `A`, the rings `M_A` and `P_A`, the
//! bicenter, and the obstruction to realizing `R -> P_A` by an extension.

pub mod obstruction;

pub use obstruction::{
    bicenter_module, build_extension, enumerate_regular_lifts, is_regular_hom, obstruction, obstruction_family,
    obstruction_with, Extension, FamilyVariant, Obstruction, RegularHomTheta, ThetaViolation,
};

use crate::algebra::{FiniteAbelianGroup, FiniteRng};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A pair of operators `a -> sigma a` (`left`) and `a -> a sigma` (`right`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bimultiplication {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bimultiplication {
    pub fn identity(a: &FiniteRng) -> Self {
        Bimultiplication { left: a.elements().collect(), right: a.elements().collect() }
    }

    /// `mu_c`: multiplication by `c` on either side.
    pub fn inner(a: &FiniteRng, c: usize) -> Self {
        Bimultiplication {
            left: a.elements().map(|x| a.mul(c, x)).collect(),
            right: a.elements().map(|x| a.mul(x, c)).collect(),
        }
    }

    /// First failing rule with its witness, if any.
    pub fn violation(&self, a: &FiniteRng) -> Option<(&'static str, Vec<usize>)> {
        let n = a.order();
        if self.left.len() != n || self.right.len() != n || self.left.iter().chain(&self.right).any(|&v| v >= n) {
            return Some(("table shape", vec![]));
        }
        let (l, r) = (&self.left, &self.right);
        for x in 0..n {
            for y in 0..n {
                let checks = [
                    ("left additive", l[a.add(x, y)] == a.add(l[x], l[y])),
                    ("right additive", r[a.add(x, y)] == a.add(r[x], r[y])),
                    ("left linear", l[a.mul(x, y)] == a.mul(l[x], y)),
                    ("right linear", r[a.mul(x, y)] == a.mul(x, r[y])),
                    ("middle", a.mul(x, l[y]) == a.mul(r[x], y)),
                ];
                if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
                    return Some((name, vec![x, y]));
                }
            }
        }
        None
    }
}

/// All additive endomorphisms of `a`, the zero map first.
fn additive_endomorphisms(a: &FiniteRng, guard: &SizeGuard) -> Result<Vec<Vec<usize>>> {
    let (g, coords) = a.additive_group();
    let candidates: Vec<Vec<usize>> = g
        .invariant_factors()
        .iter()
        .map(|&d| a.elements().filter(|&y| a.times(d, y) == 0).collect())
        .collect();
    let count = candidates.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    guard.check_enumeration("additive endomorphisms", count)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut choice = vec![0usize; candidates.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        out.push(
            coords
                .iter()
                .map(|c| c.iter().zip(&images).fold(0, |acc, (&k, &y)| a.add(acc, a.times(k, y))))
                .collect(),
        );
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `M_A` with its elements, operations and the inner map `A -> M_A`.
#[derive(Clone, Debug)]
pub struct BimultRing {
    base: FiniteRng,
    elements: Vec<Bimultiplication>,
    index: HashMap<Bimultiplication, usize>,
    ring: FiniteRng,
    unit: usize,
    inner: Vec<usize>,
}

impl BimultRing {
    /// The ring on the set of bimultiplications. It is the zero ring when
    /// `A` is, so it is kept without a distinguished unit.
    pub fn ring(&self) -> &FiniteRng {
        &self.ring
    }

    /// Index of the identity bimultiplication.
    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn base(&self) -> &FiniteRng {
        &self.base
    }

    pub fn elements(&self) -> &[Bimultiplication] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Bimultiplication {
        &self.elements[i]
    }

    pub fn index_of(&self, b: &Bimultiplication) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of `mu_c`.
    pub fn inner(&self, c: usize) -> usize {
        self.inner[c]
    }

    pub fn is_inner(&self, i: usize) -> bool {
        self.inner.contains(&i)
    }

    /// Every `c` with `mu_c` equal to element `i`, ascending.
    pub fn inner_preimages(&self, i: usize) -> Vec<usize> {
        self.base.elements().filter(|&c| self.inner[c] == i).collect()
    }

    /// Smallest index in the coset `i + mu A`, naming the class in `P_A`.
    pub fn outer_class(&self, i: usize) -> usize {
        let r = &self.ring;
        self.inner.iter().map(|&m| r.add(i, m)).min().expect("mu A contains zero")
    }

    /// `sigma(a nu) = (sigma a) nu` and `nu(a sigma) = (nu a) sigma` for all `a`.
    pub fn permutable(&self, s: usize, t: usize) -> bool {
        let (s, t) = (&self.elements[s], &self.elements[t]);
        self.base.elements().all(|a| s.left[t.right[a]] == t.right[s.left[a]] && t.left[s.right[a]] == s.right[t.left[a]])
    }
}

/// Every bimultiplication of `a`, with the ring operations of `M_A`.
pub fn enumerate_bimultiplications(a: &FiniteRng, guard: &SizeGuard) -> Result<BimultRing> {
    let endos = additive_endomorphisms(a, guard)?;
    let n = a.order();
    let lefts: Vec<&Vec<usize>> =
        endos.iter().filter(|l| (0..n).all(|x| (0..n).all(|y| l[a.mul(x, y)] == a.mul(l[x], y)))).collect();
    let rights: Vec<&Vec<usize>> =
        endos.iter().filter(|r| (0..n).all(|x| (0..n).all(|y| r[a.mul(x, y)] == a.mul(x, r[y])))).collect();
    guard.check_enumeration("bimultiplication candidates", lefts.len() as u128 * rights.len() as u128)?;
    let mut elements = Vec::new();
    for l in &lefts {
        for r in &rights {
            if (0..n).all(|x| (0..n).all(|y| a.mul(x, l[y]) == a.mul(r[x], y))) {
                elements.push(Bimultiplication { left: (*l).clone(), right: (*r).clone() });
            }
        }
    }
    let k = elements.len();
    guard.check_enumeration("bimultiplication ring axioms", (k as u128).pow(3))?;
    let index: HashMap<Bimultiplication, usize> = elements.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let find = |b: Bimultiplication| *index.get(&b).expect("bimultiplications are closed under the ring operations");
    let add: Vec<Vec<usize>> = elements
        .iter()
        .map(|s| {
            elements
                .iter()
                .map(|t| {
                    find(Bimultiplication {
                        left: (0..n).map(|x| a.add(s.left[x], t.left[x])).collect(),
                        right: (0..n).map(|x| a.add(s.right[x], t.right[x])).collect(),
                    })
                })
                .collect()
        })
        .collect();
    let mul: Vec<Vec<usize>> = elements
        .iter()
        .map(|s| {
            elements
                .iter()
                .map(|t| {
                    // (s t) a = s (t a), a (s t) = (a s) t
                    find(Bimultiplication {
                        left: (0..n).map(|x| s.left[t.left[x]]).collect(),
                        right: (0..n).map(|x| t.right[s.right[x]]).collect(),
                    })
                })
                .collect()
        })
        .collect();
    let unit = find(Bimultiplication::identity(a));
    let ring = FiniteRng::from_tables(add, mul, 0)?;
    let inner = a.elements().map(|c| find(Bimultiplication::inner(a, c))).collect();
    Ok(BimultRing { base: a.clone(), elements, index, ring, unit, inner })
}

/// `C_A = {c : ca = ac = 0 for all a}` in ascending index order, with its
/// group structure and the coordinates of each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicenter {
    pub elements: Vec<usize>,
    pub group: FiniteAbelianGroup,
    pub coords: Vec<Vec<u64>>,
}

impl Bicenter {
    /// Position of an element of `A` in `elements`.
    pub fn local(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }
}

pub fn bicenter(a: &FiniteRng) -> Bicenter {
    let elements: Vec<usize> =
        a.elements().filter(|&c| a.elements().all(|x| a.mul(c, x) == 0 && a.mul(x, c) == 0)).collect();
    let pos = |x: usize| elements.binary_search(&x).expect("bicenter is a subgroup");
    let (group, coords) = FiniteAbelianGroup::from_cayley(elements.len(), |i, j| pos(a.add(elements[i], elements[j])), 0);
    Bicenter { elements, group, coords }
}

pub(crate) fn axiom_error<T>(structure: &'static str, axiom: impl Into<String>, witness: Vec<usize>) -> Result<T> {
    Err(Error::Axiom { structure, axiom: axiom.into(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteRing;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_bimultiplications(&FiniteRng::null_cyclic(2), &g()).unwrap().order(), 4);
        assert_eq!(enumerate_bimultiplications(&FiniteRng::null_cyclic(3), &g()).unwrap().order(), 9);
        let z2 = FiniteRing::cyclic(2).unwrap();
        let m = enumerate_bimultiplications(z2.rng(), &g()).unwrap();
        assert_eq!(m.order(), 2);
        assert!((0..2).all(|i| m.is_inner(i)));
        // 2Z8: left s, right t on Z4 with s = t mod 2
        let a = FiniteRng::multiples_in_cyclic(2, 8).unwrap();
        let m = enumerate_bimultiplications(&a, &g()).unwrap();
        assert_eq!(m.order(), 8);
        assert_eq!((0..8).filter(|&i| m.is_inner(i)).count(), 2);
    }

    #[test]
    fn bicenters() {
        let a = FiniteRng::multiples_in_cyclic(2, 8).unwrap();
        // {0, 4}
        assert_eq!(bicenter(&a).elements, vec![0, 2]);
        assert_eq!(bicenter(&FiniteRng::null_cyclic(3)).elements, vec![0, 1, 2]);
        assert_eq!(bicenter(FiniteRing::cyclic(4).unwrap().rng()).elements, vec![0]);
    }
}
