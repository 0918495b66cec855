//! Functors between categories of type `(R, M)` and `(R', M')`.
//!
//! A functor over a homomorphism pair `(F0, F1)` is `F(s, u) = (F0 s, F1 u)`
//! with structure maps `F(X+Y) -> FX + FY` labelled `mu(x,y)` and
//! `F(XY) -> FX FY` labelled `nu(x,y)`. The labels live in `M'` seen as an
//! `R`-bimodule through `F0`.

use super::coherence::DiagramViolation;
use super::AnnCategoryRM;
use crate::algebra::ring::ring_hom_violation;
use crate::algebra::Bimodule;
use crate::cochain::{is_cocycle3, stream_cochains, Cochain, Cochain1, Cochain2, Cochain3};
use crate::cohomology::{cohomology_group, CoboundarySolver};
use crate::error::{invalid, Error, Result};
use crate::guard::SizeGuard;

/// A validated pair `(F0, F1)` with its source, target and pulled-back modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPair {
    pub f0: Vec<usize>,
    pub f1: Vec<usize>,
    source: Bimodule,
    target: Bimodule,
    pulled: Bimodule,
}

impl HomPair {
    pub fn new(source: &Bimodule, target: &Bimodule, f0: Vec<usize>, f1: Vec<usize>) -> Result<Self> {
        let (r, r2) = (source.ring(), target.ring());
        if let Some((axiom, witness)) = ring_hom_violation(&f0, r, r2) {
            return Err(Error::Axiom { structure: "ring homomorphism", axiom, witness });
        }
        if f1.len() != source.order() || f1.iter().any(|&v| v >= target.order()) {
            return invalid("module map table has the wrong shape");
        }
        let err = |axiom: &str, witness: Vec<usize>| {
            Err(Error::Axiom { structure: "module homomorphism", axiom: axiom.into(), witness })
        };
        for a in 0..source.order() {
            for b in 0..source.order() {
                if f1[source.add(a, b)] != target.add(f1[a], f1[b]) {
                    return err("additive", vec![a, b]);
                }
            }
            for s in r.elements() {
                if f1[source.left(s, a)] != target.left(f0[s], f1[a]) {
                    return err("left compatible", vec![s, a]);
                }
                if f1[source.right(a, s)] != target.right(f1[a], f0[s]) {
                    return err("right compatible", vec![a, s]);
                }
            }
        }
        let pulled = target.pullback(r, &f0)?;
        Ok(HomPair { f0, f1, source: source.clone(), target: target.clone(), pulled })
    }

    /// `(id, id)` on one module.
    pub fn identity(m: &Bimodule) -> Self {
        let f0 = m.ring().elements().collect();
        let f1 = (0..m.order()).collect();
        HomPair::new(m, m, f0, f1).expect("identity pair")
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    /// `M'` as an `R`-bimodule through `F0`.
    pub fn pulled(&self) -> &Bimodule {
        &self.pulled
    }
}

/// `(f_*, f'^*)`: apply `F1` to every value of `f`, precompose every
/// argument of `f'` with `F0`. Both are cochains over the pulled module.
pub fn pushforward_pullback(pair: &HomPair, f: &Cochain3, f2: &Cochain3) -> Result<(Cochain3, Cochain3)> {
    f.check_shape(&pair.source)?;
    f2.check_shape(&pair.target)?;
    let n = pair.source.ring().order();
    let push = f.map_values(|v| pair.f1[v]);
    let mut pull = Cochain3::zero(n);
    let f0 = &pair.f0;
    for x in 0..n {
        for y in 0..n {
            pull.eta[x * n + y] = f2.eta(f0[x], f0[y]);
            for z in 0..n {
                let i = (x * n + y) * n + z;
                let (a, b, c) = (f0[x], f0[y], f0[z]);
                pull.zeta[i] = f2.zeta(a, b, c);
                pull.alpha[i] = f2.alpha(a, b, c);
                pull.lambda[i] = f2.lambda(a, b, c);
                pull.rho[i] = f2.rho(a, b, c);
            }
        }
    }
    Ok((push, pull))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnFunctorRM {
    pub pair: HomPair,
    /// `(mu, nu)` over the pulled module
    pub data: Cochain2,
}

impl AnnFunctorRM {
    pub fn new(pair: HomPair, data: Cochain2) -> Result<Self> {
        data.check_shape(pair.pulled())?;
        if let Some((c, args)) = data.normalization_violation(pair.pulled().ring()) {
            return invalid(format!("functor data {} is nonzero at {args:?}", c.name()));
        }
        Ok(AnnFunctorRM { pair, data })
    }

    pub fn map_morphism(&self, mor: super::MorphismRM) -> super::MorphismRM {
        super::MorphismRM { object: self.pair.f0[mor.object], label: self.pair.f1[mor.label] }
    }
}

/// Failing functor diagrams for `F: src -> dst`, in the order
/// `plus-assoc`, `plus-comm`, `times-assoc`, `dist-left`, `dist-right`.
/// The categories carry their own structure tables; nothing is assumed about
/// them beyond shape.
pub fn functor_violations(src: &AnnCategoryRM, dst: &AnnCategoryRM, func: &AnnFunctorRM) -> Result<Vec<DiagramViolation>> {
    let pair = &func.pair;
    if src.module() != pair.source() || dst.module() != pair.target() {
        return invalid("functor pair does not match the categories");
    }
    let m = pair.pulled();
    let r = m.ring();
    let (s, t) = (src.structure(), dst.structure());
    let (f0, f1) = (&pair.f0, &pair.f1);
    let (mu, nu) = (|x, y| func.data.mu(x, y), |x, y| func.data.nu(x, y));
    let sum = |xs: &[usize]| xs.iter().fold(0, |acc, &v| m.add(acc, v));
    let mut out = Vec::new();
    let mut record = |name: &str, tuple: Vec<usize>, lhs: usize, rhs: usize| {
        let residual = m.sub(lhs, rhs);
        if residual != 0 {
            out.push(DiagramViolation { diagram: name.to_string(), tuple, residual });
        }
    };
    let n = r.order();
    for x in 0..n {
        for y in 0..n {
            // F(c) then the sum map, against the sum map then c'
            record(
                "plus-comm",
                vec![x, y],
                sum(&[f1[s.eta(x, y)], mu(y, x)]),
                sum(&[mu(x, y), t.eta(f0[x], f0[y])]),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (a, b, c) = (f0[x], f0[y], f0[z]);
                record(
                    "plus-assoc",
                    vec![x, y, z],
                    sum(&[f1[s.zeta(x, y, z)], mu(r.add(x, y), z), mu(x, y)]),
                    sum(&[mu(x, r.add(y, z)), mu(y, z), t.zeta(a, b, c)]),
                );
                record(
                    "times-assoc",
                    vec![x, y, z],
                    sum(&[f1[s.alpha(x, y, z)], nu(r.mul(x, y), z), m.right(nu(x, y), z)]),
                    sum(&[nu(x, r.mul(y, z)), m.left(x, nu(y, z)), t.alpha(a, b, c)]),
                );
                record(
                    "dist-left",
                    vec![x, y, z],
                    sum(&[f1[s.lambda(x, y, z)], mu(r.mul(x, y), r.mul(x, z)), nu(x, y), nu(x, z)]),
                    sum(&[nu(x, r.add(y, z)), m.left(x, mu(y, z)), t.lambda(a, b, c)]),
                );
                record(
                    "dist-right",
                    vec![x, y, z],
                    sum(&[f1[s.rho(x, y, z)], mu(r.mul(x, z), r.mul(y, z)), nu(x, z), nu(y, z)]),
                    sum(&[nu(r.add(x, y), z), m.right(mu(x, y), z), t.rho(a, b, c)]),
                );
            }
        }
    }
    let order = ["plus-assoc", "plus-comm", "times-assoc", "dist-left", "dist-right"];
    out.sort_by_key(|v| order.iter().position(|&o| o == v.diagram));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExistence {
    /// least `(mu, nu)` making the pair a functor
    Exists(Cochain2),
    /// the nonzero class of `f_* - f'^*` in `H^3(R, M')`
    Obstructed { class: Vec<u64>, difference: Cochain3 },
}

fn require_cocycle(m: &Bimodule, f: &Cochain3, name: &str) -> Result<()> {
    f.check_shape(m)?;
    if let Some(v) = is_cocycle3(m, f).violations.first() {
        return Err(Error::NotCocycle(format!("3-cocycle: {name} fails relation {} at {:?}", v.relation, v.tuple)));
    }
    Ok(())
}

/// Whether `pair` carries a functor between the categories of the 3-cocycles
/// `f` and `f2`.
pub fn exists_ann_functor(pair: &HomPair, f: &Cochain3, f2: &Cochain3, guard: &SizeGuard) -> Result<FunctorExistence> {
    require_cocycle(pair.source(), f, "source")?;
    require_cocycle(pair.target(), f2, "target")?;
    let m = pair.pulled();
    let (push, pull) = pushforward_pullback(pair, f, f2)?;
    let diff = push.sub(m, &pull);
    if let Some(g) = CoboundarySolver::new(m, guard)?.solve(&diff) {
        return Ok(FunctorExistence::Exists(g));
    }
    let class = cohomology_group(3, m, guard)?
        .class_of(&diff.clone().into())
        .expect("pushforward and pullback of cocycles are cocycles");
    Ok(FunctorExistence::Obstructed { class, difference: diff })
}

/// One functor per congruence class over a regular pair, indexed by `H^2(R, M')`.
pub fn enumerate_regular_functors(
    pair: &HomPair,
    f: &Cochain3,
    f2: &Cochain3,
    guard: &SizeGuard,
) -> Result<Vec<AnnFunctorRM>> {
    require_cocycle(pair.source(), f, "source")?;
    require_cocycle(pair.target(), f2, "target")?;
    let m = pair.pulled();
    let (push, pull) = pushforward_pullback(pair, f, f2)?;
    let diff = push.sub(m, &pull);
    if !diff.is_zero() {
        return Err(Error::NotRegular(Box::new(diff)));
    }
    cohomology_group(2, m, guard)?
        .representatives()
        .into_iter()
        .map(|(_, g)| AnnFunctorRM::new(pair.clone(), g.as_two().expect("level 2").clone()))
        .collect()
}

/// Whether the family `alpha` (indexed by all of `R`) is a morphism `F -> G`:
/// `alpha_{x+y}` followed by G's sum map equals F's sum map followed by
/// `alpha_x + alpha_y`, and likewise for products with `x alpha_y + alpha_x y`.
pub fn is_functor_morphism(f: &AnnFunctorRM, g: &AnnFunctorRM, alpha: &[usize]) -> bool {
    let m = f.pair.pulled();
    let r = m.ring();
    if f.pair != g.pair || alpha.len() != r.order() {
        return false;
    }
    r.elements().all(|x| {
        r.elements().all(|y| {
            let sum_sq = m.add(alpha[r.add(x, y)], g.data.mu(x, y))
                == m.add(f.data.mu(x, y), m.add(alpha[x], alpha[y]));
            let prod_sq = m.add(alpha[r.mul(x, y)], g.data.nu(x, y))
                == m.add(f.data.nu(x, y), m.add(m.left(x, alpha[y]), m.right(alpha[x], y)));
            sum_sq && prod_sq
        })
    })
}

/// Searches for a morphism `F -> G` by testing the squares directly.
///
/// Only normalized families are tried: the sum square at `(0,0)` forces
/// `alpha_0 = 0` and the product square at `(1,1)` forces `alpha_1 = 0`.
pub fn functors_congruent(f: &AnnFunctorRM, g: &AnnFunctorRM, guard: &SizeGuard) -> Result<Option<Cochain1>> {
    if f.pair != g.pair {
        return Ok(None);
    }
    Ok(stream_cochains::<Cochain1>(f.pair.pulled(), guard.enumeration)?.find(|a| is_functor_morphism(f, g, &a.alpha)))
}

/// The automorphisms of `F`, as families satisfying both squares with `G = F`.
/// Composition is pointwise addition.
pub fn aut_functor(f: &AnnFunctorRM, guard: &SizeGuard) -> Result<Vec<Cochain1>> {
    Ok(stream_cochains::<Cochain1>(f.pair.pulled(), guard.enumeration)?
        .filter(|a| is_functor_morphism(f, f, &a.alpha))
        .collect())
}

/// Every normalized `(mu, nu)` over `pair` whose functor diagrams commute.
pub fn search_functors(
    src: &AnnCategoryRM,
    dst: &AnnCategoryRM,
    pair: &HomPair,
    guard: &SizeGuard,
) -> Result<Vec<AnnFunctorRM>> {
    let mut out = Vec::new();
    for g in stream_cochains::<Cochain2>(pair.pulled(), guard.enumeration)? {
        let func = AnnFunctorRM { pair: pair.clone(), data: g };
        if functor_violations(src, dst, &func)?.is_empty() {
            out.push(func);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteRing;
    use crate::cochain::delta1;

    fn regular(r: &FiniteRing) -> Bimodule {
        Bimodule::regular(r)
    }

    #[test]
    fn pair_validation() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let z2 = FiniteRing::cyclic(2).unwrap();
        let (m4, m2) = (regular(&z4), regular(&z2));
        assert!(HomPair::new(&m4, &m2, vec![0, 1, 0, 1], vec![0, 1, 0, 1]).is_ok());
        // not additive
        assert!(matches!(
            HomPair::new(&m4, &m2, vec![0, 1, 0, 1], vec![0, 1, 1, 1]),
            Err(Error::Axiom { structure: "module homomorphism", .. })
        ));
        assert!(matches!(
            HomPair::new(&m2, &m4, vec![0, 1], vec![0, 2]),
            Err(Error::Axiom { structure: "ring homomorphism", .. })
        ));
        // zero map is compatible with any F0
        assert!(HomPair::new(&m4, &m2, vec![0, 1, 0, 1], vec![0; 4]).is_ok());
    }

    #[test]
    fn identity_pushforward_pullback() {
        let r = FiniteRing::cyclic(3).unwrap();
        let m = regular(&r);
        let pair = HomPair::identity(&m);
        let mut f = Cochain3::zero(3);
        f.set(0, &[1, 2, 2], 1);
        let (p, q) = pushforward_pullback(&pair, &f, &f).unwrap();
        assert_eq!(p, f);
        assert_eq!(q, f);
    }

    #[test]
    fn squares_give_coboundary_difference() {
        let r = FiniteRing::dual_numbers(2).unwrap();
        let m = regular(&r);
        let pair = HomPair::identity(&m);
        let g = AnnFunctorRM::new(pair.clone(), Cochain2::zero(4)).unwrap();
        for a in stream_cochains::<Cochain1>(&m, 1 << 10).unwrap() {
            let h = AnnFunctorRM::new(pair.clone(), delta1(&m, &a)).unwrap();
            // G - F = delta1(alpha) exactly when alpha is a morphism F -> G
            assert!(is_functor_morphism(&g, &h, &a.alpha));
        }
    }

    #[test]
    fn identity_functor_automorphisms() {
        let guard = SizeGuard::default();
        let z2 = regular(&FiniteRing::cyclic(2).unwrap());
        let id = AnnFunctorRM::new(HomPair::identity(&z2), Cochain2::zero(2)).unwrap();
        assert_eq!(aut_functor(&id, &guard).unwrap().len(), 1);
        let e = regular(&FiniteRing::dual_numbers(2).unwrap());
        let id = AnnFunctorRM::new(HomPair::identity(&e), Cochain2::zero(4)).unwrap();
        assert_eq!(aut_functor(&id, &guard).unwrap().len(), 4);
    }

    #[test]
    fn z2_functors() {
        let guard = SizeGuard::default();
        let m = regular(&FiniteRing::cyclic(2).unwrap());
        let pair = HomPair::identity(&m);
        let zero = Cochain3::zero(2);
        assert_eq!(
            exists_ann_functor(&pair, &zero, &zero, &guard).unwrap(),
            FunctorExistence::Exists(Cochain2::zero(2))
        );
        let reps = enumerate_regular_functors(&pair, &zero, &zero, &guard).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(functors_congruent(&reps[0], &reps[1], &guard).unwrap(), None);
        let cat = AnnCategoryRM::strict(&m);
        let all = search_functors(&cat, &cat, &pair, &guard).unwrap();
        assert_eq!(all.len(), 2);
    }
}
