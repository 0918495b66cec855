//! Skeletal categorical rings of type `(R, M)`: objects are ring elements,
//! every morphism is an automorphism `(s, u)` with `u` in `M`.

pub mod coherence;
pub mod functor;

pub use coherence::{verify_coherence, verify_regular_coherence, CoherenceChecker, DiagramViolation};
pub use functor::{
    aut_functor, enumerate_regular_functors, exists_ann_functor, functor_violations, functors_congruent,
    is_functor_morphism, pushforward_pullback, search_functors, AnnFunctorRM, FunctorExistence, HomPair,
};

use crate::algebra::{Bimodule, FiniteRing};
use crate::cochain::{AnnStructure, Cochain, Cochain3};
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphismRM {
    pub object: usize,
    /// module element index
    pub label: usize,
}

/// The category with structure maps `a+ = (., xi)`, `c = (., eta)`,
/// `a = (., alpha)` and the two distributivity maps `(., lambda)`, `(., rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnCategoryRM {
    module: Bimodule,
    structure: Cochain3,
}

impl AnnCategoryRM {
    pub fn new(module: &Bimodule, structure: AnnStructure) -> Self {
        AnnCategoryRM { module: module.clone(), structure: structure.into_tables() }
    }

    /// The category on a 3-cocycle, using its flipped data as structure.
    pub fn from_cocycle(module: &Bimodule, f: &Cochain3) -> Result<Self> {
        Ok(AnnCategoryRM::new(module, AnnStructure::from_cocycle(module, f)?))
    }

    /// Builds the category on arbitrary tables of the right shape, without
    /// checking any axiom. This is what the coherence verifier is for.
    pub fn from_tables(module: &Bimodule, structure: Cochain3) -> Result<Self> {
        structure.check_shape(module)?;
        Ok(AnnCategoryRM { module: module.clone(), structure })
    }

    /// The strict category: every structure map is an identity.
    pub fn strict(module: &Bimodule) -> Self {
        AnnCategoryRM { module: module.clone(), structure: Cochain3::zero(module.ring().order()) }
    }

    pub fn ring(&self) -> &FiniteRing {
        self.module.ring()
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn structure(&self) -> &Cochain3 {
        &self.structure
    }

    pub fn identity(&self, s: usize) -> MorphismRM {
        MorphismRM { object: s, label: 0 }
    }

    /// `(s,u) o (s,v) = (s, u+v)`.
    pub fn compose(&self, a: MorphismRM, b: MorphismRM) -> Result<MorphismRM> {
        if a.object != b.object {
            return invalid(format!("cannot compose morphisms of objects {} and {}", a.object, b.object));
        }
        Ok(MorphismRM { object: a.object, label: self.module.add(a.label, b.label) })
    }

    pub fn inverse(&self, a: MorphismRM) -> MorphismRM {
        MorphismRM { object: a.object, label: self.module.neg(a.label) }
    }

    /// `(s,u) + (t,v) = (s+t, u+v)`.
    pub fn oplus(&self, a: MorphismRM, b: MorphismRM) -> MorphismRM {
        MorphismRM { object: self.ring().add(a.object, b.object), label: self.module.add(a.label, b.label) }
    }

    /// `(s,u) x (t,v) = (st, sv + ut)`.
    pub fn otimes(&self, a: MorphismRM, b: MorphismRM) -> MorphismRM {
        let m = &self.module;
        MorphismRM {
            object: self.ring().mul(a.object, b.object),
            label: m.add(m.left(a.object, b.label), m.right(a.label, b.object)),
        }
    }

    pub fn assoc_plus(&self, x: usize, y: usize, z: usize) -> MorphismRM {
        let r = self.ring();
        MorphismRM { object: r.add(x, r.add(y, z)), label: self.structure.zeta(x, y, z) }
    }

    pub fn commutativity(&self, x: usize, y: usize) -> MorphismRM {
        MorphismRM { object: self.ring().add(x, y), label: self.structure.eta(x, y) }
    }

    pub fn assoc_times(&self, x: usize, y: usize, z: usize) -> MorphismRM {
        let r = self.ring();
        MorphismRM { object: r.mul(x, r.mul(y, z)), label: self.structure.alpha(x, y, z) }
    }

    pub fn dist_left(&self, x: usize, y: usize, z: usize) -> MorphismRM {
        let r = self.ring();
        MorphismRM { object: r.mul(x, r.add(y, z)), label: self.structure.lambda(x, y, z) }
    }

    pub fn dist_right(&self, x: usize, y: usize, z: usize) -> MorphismRM {
        let r = self.ring();
        MorphismRM { object: r.mul(r.add(x, y), z), label: self.structure.rho(x, y, z) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn morphism_arithmetic() {
        let r = FiniteRing::cyclic(4).unwrap();
        let m = Bimodule::regular(&r);
        let c = AnnCategoryRM::strict(&m);
        let mor = |object, label| MorphismRM { object, label };
        assert_eq!(c.compose(mor(1, 2), mor(1, 3)).unwrap(), mor(1, 1));
        assert!(c.compose(mor(1, 2), mor(2, 3)).is_err());
        assert_eq!(c.compose(mor(3, 1), c.inverse(mor(3, 1))).unwrap(), c.identity(3));
        assert_eq!(c.otimes(mor(2, 1), mor(3, 2)), mor(2, 3));
        assert_eq!(c.otimes(mor(1, 0), mor(3, 2)), mor(3, 2));
        assert_eq!(c.oplus(mor(3, 1), mor(2, 2)), mor(1, 3));

        let z2 = Bimodule::regular(&FiniteRing::cyclic(2).unwrap());
        let c2 = AnnCategoryRM::strict(&z2);
        assert_eq!(c2.oplus(mor(1, 1), mor(1, 1)), mor(0, 0));
    }
}
