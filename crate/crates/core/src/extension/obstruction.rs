//! Regular homomorphisms `R -> P_A`, their obstruction, and the extension
//! ring built when the obstruction vanishes.
//!
//! A homomorphism is given by a lift `sigma: R -> M_A` with `sigma(0) = 0`
//! and `sigma(1) = 1`. The factor sets `f, g: R x R -> A` satisfy
//! `mu_f(x,y) = sigma(x+y) - sigma(x) - sigma(y)` and
//! `mu_g(x,y) = sigma(xy) - sigma(x) sigma(y)`; each is determined up to
//! a `C_A`-valued function.

use super::{axiom_error, bicenter, Bicenter, BimultRing};
use crate::algebra::ring::ring_hom_violation;
use crate::algebra::{Bimodule, FiniteRing};
use crate::cochain::{flip_lambda, Cochain, Cochain3};
use crate::cohomology::cohomology_group;
use crate::error::{invalid, Result};
use crate::guard::SizeGuard;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularHomTheta {
    /// `M_A` index of `sigma(x)` for each ring element `x`
    pub lift: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaViolation {
    pub condition: String,
    pub args: Vec<usize>,
}

fn violation(condition: &str, args: Vec<usize>) -> ThetaViolation {
    ThetaViolation { condition: condition.to_string(), args }
}

/// Checks that `x -> class(sigma x)` is a ring homomorphism into `P_A` with
/// `theta(1) = 1`, and that all lift values are pairwise permutable.
pub fn is_regular_hom(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta) -> Vec<ThetaViolation> {
    let s = &theta.lift;
    if s.len() != r.order() || s.iter().any(|&i| i >= ma.order()) {
        return vec![violation("lift table shape", vec![])];
    }
    let m = ma.ring();
    let mut out = Vec::new();
    if !ma.is_inner(m.sub(s[r.unit()], ma.unit())) {
        out.push(violation("theta(1) = 1", vec![r.unit()]));
    }
    for x in r.elements() {
        for y in r.elements() {
            if !ma.is_inner(m.sub(s[r.add(x, y)], m.add(s[x], s[y]))) {
                out.push(violation("additive", vec![x, y]));
            }
            if !ma.is_inner(m.sub(s[r.mul(x, y)], m.mul(s[x], s[y]))) {
                out.push(violation("multiplicative", vec![x, y]));
            }
            if x <= y && !ma.permutable(s[x], s[y]) {
                out.push(violation("permutable", vec![x, y]));
            }
        }
    }
    out
}

/// Every regular homomorphism given by a lift with `sigma(0) = 0`, `sigma(1) = 1`.
pub fn enumerate_regular_lifts(ma: &BimultRing, r: &FiniteRing, guard: &SizeGuard) -> Result<Vec<RegularHomTheta>> {
    let n = r.order();
    let free: Vec<usize> = r.elements().filter(|&x| !r.is_trivial_arg(x)).collect();
    let count = (ma.order() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    guard.check_enumeration("lifts into the bimultiplication ring", count)?;
    let mut lift = vec![0; n];
    lift[r.unit()] = ma.unit();
    let mut out = Vec::new();
    loop {
        let theta = RegularHomTheta { lift: lift.clone() };
        if is_regular_hom(ma, r, &theta).is_empty() {
            out.push(theta);
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                return Ok(out);
            }
            let x = free[i];
            lift[x] += 1;
            if lift[x] < ma.order() {
                break;
            }
            lift[x] = 0;
            i += 1;
        }
    }
}

fn require_regular(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta) -> Result<()> {
    if let Some(v) = is_regular_hom(ma, r, theta).into_iter().next() {
        return axiom_error("regular homomorphism", v.condition, v.args);
    }
    let s = &theta.lift;
    if s[0] != 0 || s[r.unit()] != ma.unit() {
        return invalid("the lift must send 0 to 0 and 1 to the identity bimultiplication");
    }
    Ok(())
}

/// `C_A` as an `R`-bimodule through the lift: `x c = sigma(x) c`, `c x = c sigma(x)`.
pub fn bicenter_module(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta) -> Result<(Bicenter, Bimodule)> {
    let c = bicenter(ma.base());
    let s = &theta.lift;
    let local = |a: usize| c.local(a).expect("multiples of bicenter elements stay in the bicenter");
    let m = Bimodule::from_actions(
        r,
        c.group.clone(),
        c.coords.clone(),
        |x, i| local(ma.element(s[x]).left[c.elements[i]]),
        |i, x| local(ma.element(s[x]).right[c.elements[i]]),
    )?;
    Ok((c, m))
}

/// Checks normalization and the defining equations of a factor set pair.
fn check_factor_sets(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta, f: &[usize], g: &[usize]) -> Result<()> {
    let (n, a) = (r.order(), ma.base());
    if f.len() != n * n || g.len() != n * n || f.iter().chain(g).any(|&v| v >= a.order()) {
        return invalid(format!("factor sets must be {n}x{n} tables of elements of A"));
    }
    let (m, s) = (ma.ring(), &theta.lift);
    for x in 0..n {
        for y in 0..n {
            let (fv, gv) = (f[x * n + y], g[x * n + y]);
            if (x == 0 || y == 0) && fv != 0 {
                return axiom_error("factor set", "f vanishes at 0", vec![x, y]);
            }
            if (r.is_trivial_arg(x) || r.is_trivial_arg(y)) && gv != 0 {
                return axiom_error("factor set", "g vanishes at 0 and 1", vec![x, y]);
            }
            if ma.inner(fv) != m.sub(s[r.add(x, y)], m.add(s[x], s[y])) {
                return axiom_error("factor set", "mu f = sigma(x+y) - sigma(x) - sigma(y)", vec![x, y]);
            }
            if ma.inner(gv) != m.sub(s[r.mul(x, y)], m.mul(s[x], s[y])) {
                return axiom_error("factor set", "mu g = sigma(xy) - sigma(x) sigma(y)", vec![x, y]);
            }
        }
    }
    Ok(())
}

/// The lexicographically least factor sets. Zero is the least solution
/// wherever the target vanishes, so both come out normalized.
fn least_factor_sets(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta) -> Result<(Vec<usize>, Vec<usize>)> {
    let (n, m, s) = (r.order(), ma.ring(), &theta.lift);
    let solve = |target: usize, x: usize, y: usize| match ma.inner_preimages(target).first() {
        Some(&c) => Ok(c),
        None => axiom_error("regular homomorphism", "defect is inner", vec![x, y]),
    };
    let mut f = vec![0; n * n];
    let mut g = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            f[x * n + y] = solve(m.sub(s[r.add(x, y)], m.add(s[x], s[y])), x, y)?;
            g[x * n + y] = solve(m.sub(s[r.mul(x, y)], m.mul(s[x], s[y])), x, y)?;
        }
    }
    Ok((f, g))
}

/// Which formulas to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyVariant {
    Corrected,
    /// The formulas exactly as printed: the first term of `zeta` is
    /// `f(x,y)`, and the two middle terms of `alpha` cancel.
    Literal,
}

/// The five maps computed from `(f, g)`, valued in `A` (element indices).
pub fn obstruction_family(
    ma: &BimultRing,
    r: &FiniteRing,
    theta: &RegularHomTheta,
    f: &[usize],
    g: &[usize],
    variant: FamilyVariant,
) -> Cochain3 {
    let (n, a, s) = (r.order(), ma.base(), &theta.lift);
    let f = |x: usize, y: usize| f[x * n + y];
    let g = |x: usize, y: usize| g[x * n + y];
    let lact = |x: usize, v: usize| ma.element(s[x]).left[v];
    let ract = |v: usize, x: usize| ma.element(s[x]).right[v];
    let comb = |plus: &[usize], minus: &[usize]| {
        let p = plus.iter().fold(0, |acc, &v| a.add(acc, v));
        minus.iter().fold(p, |acc, &v| a.sub(acc, v))
    };
    let literal = variant == FamilyVariant::Literal;
    let mut out = Cochain3::zero(n);
    for x in 0..n {
        for y in 0..n {
            out.eta[x * n + y] = comb(&[f(x, y)], &[f(y, x)]);
            for z in 0..n {
                let i = (x * n + y) * n + z;
                let first = if literal { f(x, y) } else { f(y, z) };
                out.zeta[i] = comb(&[first, f(x, r.add(y, z))], &[f(r.add(x, y), z), f(x, y)]);
                out.alpha[i] = if literal {
                    comb(&[lact(x, g(y, z))], &[ract(g(x, y), z)])
                } else {
                    comb(&[lact(x, g(y, z)), g(x, r.mul(y, z))], &[g(r.mul(x, y), z), ract(g(x, y), z)])
                };
                out.lambda[i] =
                    comb(&[lact(x, f(y, z)), g(x, r.add(y, z))], &[f(r.mul(x, y), r.mul(x, z)), g(x, y), g(x, z)]);
                out.rho[i] =
                    comb(&[ract(f(x, y), z), g(r.add(x, y), z)], &[f(r.mul(x, z), r.mul(y, z)), g(x, z), g(y, z)]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub bicenter: Bicenter,
    /// `C_A` as an `R`-bimodule
    pub module: Bimodule,
    /// the family with values in `module`, as structure data
    pub family: Cochain3,
    /// class of the matching 3-cocycle in `H^3(R, C_A)`, for this lift
    pub class: Vec<u64>,
    /// number of admissible values for each entry of `f` and `g`
    pub coset_size: usize,
}

impl Obstruction {
    pub fn vanishes(&self) -> bool {
        self.family.is_zero()
    }
}

/// The obstruction computed from the least factor sets.
pub fn obstruction(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta, guard: &SizeGuard) -> Result<Obstruction> {
    require_regular(ma, r, theta)?;
    let (f, g) = least_factor_sets(ma, r, theta)?;
    obstruction_with(ma, r, theta, f, g, guard)
}

/// The obstruction computed from caller-chosen factor sets.
pub fn obstruction_with(
    ma: &BimultRing,
    r: &FiniteRing,
    theta: &RegularHomTheta,
    f: Vec<usize>,
    g: Vec<usize>,
    guard: &SizeGuard,
) -> Result<Obstruction> {
    require_regular(ma, r, theta)?;
    check_factor_sets(ma, r, theta, &f, &g)?;
    let (c, module) = bicenter_module(ma, r, theta)?;
    let raw = obstruction_family(ma, r, theta, &f, &g, FamilyVariant::Corrected);
    let n = r.order();
    let mut family = Cochain3::zero(n);
    for (slot, comp) in Cochain3::COMPONENTS.iter().enumerate() {
        for (idx, &v) in raw.table(slot).iter().enumerate() {
            match c.local(v) {
                Some(l) => family.table_mut(slot)[idx] = l,
                None => {
                    let args = crate::cochain::unflatten(n, comp.arity(), idx);
                    return axiom_error("obstruction", format!("{} lies in the bicenter", comp.name()), args);
                }
            }
        }
    }
    let class = cohomology_group(3, &module, guard)?
        .class_of(&flip_lambda(&module, &family).into())
        .ok_or_else(|| crate::Error::NotCocycle("3-cocycle: obstruction family".into()))?;
    let coset_size = c.elements.len();
    Ok(Obstruction { f, g, bicenter: c, module, family, class, coset_size })
}

/// `S` on pairs `(a, r)` stored at index `r |A| + a`, with
/// `A -> S -> R` given by `inclusion` and `projection`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub ring: FiniteRing,
    pub inclusion: Vec<usize>,
    pub projection: Vec<usize>,
}

/// The extension ring, when the obstruction of `(f, g)` vanishes.
///
/// Pairs `(a, r)` stand for `a + sigma(r)`. Since `sigma(r1) + sigma(r2)`
/// is `sigma(r1 + r2) - mu f(r1,r2)`, the operations are
/// `(a1 + a2 - f(r1,r2), r1 + r2)` and
/// `(a1 a2 + sigma(r1) a2 + a1 sigma(r2) - g(r1,r2), r1 r2)`.
pub fn build_extension(
    ma: &BimultRing,
    r: &FiniteRing,
    theta: &RegularHomTheta,
    f: &[usize],
    g: &[usize],
) -> Result<Extension> {
    require_regular(ma, r, theta)?;
    check_factor_sets(ma, r, theta, f, g)?;
    let family = obstruction_family(ma, r, theta, f, g, FamilyVariant::Corrected);
    let n = r.order();
    for (slot, comp) in Cochain3::COMPONENTS.iter().enumerate() {
        if let Some(idx) = family.table(slot).iter().position(|&v| v != 0) {
            let args = crate::cochain::unflatten(n, comp.arity(), idx);
            return axiom_error("extension obstruction", format!("{} vanishes", comp.name()), args);
        }
    }
    let (a, s) = (ma.base(), &theta.lift);
    let k = a.order();
    let split = |i: usize| (i % k, i / k);
    let join = |x: usize, y: usize| y * k + x;
    let size = k * n;
    let add: Vec<Vec<usize>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let ((a1, r1), (a2, r2)) = (split(i), split(j));
                    join(a.sub(a.add(a1, a2), f[r1 * n + r2]), r.add(r1, r2))
                })
                .collect()
        })
        .collect();
    let mul: Vec<Vec<usize>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let ((a1, r1), (a2, r2)) = (split(i), split(j));
                    let v = [a.mul(a1, a2), ma.element(s[r1]).left[a2], ma.element(s[r2]).right[a1]]
                        .iter()
                        .fold(0, |acc, &t| a.add(acc, t));
                    join(a.sub(v, g[r1 * n + r2]), r.mul(r1, r2))
                })
                .collect()
        })
        .collect();
    let ring = FiniteRing::from_tables(add, mul, 0, join(0, r.unit()))?;
    let inclusion: Vec<usize> = a.elements().map(|x| join(x, 0)).collect();
    let projection: Vec<usize> = ring.elements().map(|i| split(i).1).collect();
    let ext = Extension { ring, inclusion, projection };
    verify_extension(ma, r, theta, &ext)?;
    Ok(ext)
}

/// Exactness of `0 -> A -> S -> R -> 0` and that `(a, r) -> mu_a + sigma(r)`
/// is a ring map `S -> M_A`, so `S` induces the given homomorphism.
fn verify_extension(ma: &BimultRing, r: &FiniteRing, theta: &RegularHomTheta, ext: &Extension) -> Result<()> {
    let (a, s, sr) = (ma.base(), &theta.lift, &ext.ring);
    let (inc, proj) = (&ext.inclusion, &ext.projection);
    for x in a.elements() {
        for y in a.elements() {
            if inc[a.add(x, y)] != sr.add(inc[x], inc[y]) || inc[a.mul(x, y)] != sr.mul(inc[x], inc[y]) {
                return axiom_error("extension", "inclusion is a ring map", vec![x, y]);
            }
        }
    }
    let mut image = inc.clone();
    image.sort_unstable();
    image.dedup();
    if image.len() != a.order() {
        return axiom_error("extension", "inclusion is injective", vec![]);
    }
    if let Some((axiom, witness)) = ring_hom_violation(proj, sr, r) {
        return axiom_error("extension", format!("projection {axiom}"), witness);
    }
    let kernel: Vec<usize> = sr.elements().filter(|&i| proj[i] == 0).collect();
    if kernel != image {
        return axiom_error("extension", "kernel of projection is the image of inclusion", kernel);
    }
    let m = ma.ring();
    let k = a.order();
    let phi: Vec<usize> = sr.elements().map(|i| m.add(ma.inner(i % k), s[i / k])).collect();
    if phi[sr.unit()] != ma.unit() {
        return axiom_error("extension", "induced map preserves 1", vec![sr.unit()]);
    }
    for i in sr.elements() {
        for j in sr.elements() {
            if phi[sr.add(i, j)] != m.add(phi[i], phi[j]) || phi[sr.mul(i, j)] != m.mul(phi[i], phi[j]) {
                return axiom_error("extension", "induced map to bimultiplications is a ring map", vec![i, j]);
            }
        }
    }
    Ok(())
}
