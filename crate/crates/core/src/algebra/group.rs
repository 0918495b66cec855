use super::matrix::Matrix;
use super::snf::{lcm, smith, Integers, Track};
use num_bigint::BigInt;
use num_integer::Integer;
use super::zmod::{kernel_with_moduli, Subquotient};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `Z_{d_1} x ... x Z_{d_k}` with `d_1 | d_2 | ... | d_k` and every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        FiniteAbelianGroup::new(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Vec<u64> {
        g.factors
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors of `Z_{o_1} x ... x Z_{o_k}` for arbitrary orders.
pub fn canonical_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &o in orders {
        for (p, q) in prime_powers(o) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for qs in by_prime.values_mut() {
        qs.sort_unstable();
        let off = len - qs.len();
        for (i, q) in qs.iter().enumerate() {
            out[off + i] *= q;
        }
    }
    out
}

impl FiniteAbelianGroup {
    /// Factors equal to 1 are dropped; the rest must form a divisibility chain.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        let factors: Vec<u64> = invariant_factors.into_iter().filter(|&d| d != 1).collect();
        if factors.contains(&0) {
            return Err(Error::Invalid("invariant factor 0 describes an infinite group".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        FiniteAbelianGroup::new(vec![n]).expect("cyclic group")
    }

    /// The group `Z_{o_1} x ... x Z_{o_k}` put into canonical form.
    pub fn from_orders(orders: &[u64]) -> Self {
        FiniteAbelianGroup { factors: canonical_factors(orders).into_iter().filter(|&d| d > 1).collect() }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.factors.len() && x.iter().zip(&self.factors).all(|(a, d)| a < d)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(a, d)| (d - a) % d).collect()
    }

    pub fn generator(&self, i: usize) -> Vec<u64> {
        let mut g = self.zero();
        g[i] = 1;
        g
    }

    /// Index of `x` in lexicographic order, first coordinate most significant.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.factors).fold(0usize, |acc, (&a, &d)| acc * d as usize + a as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut x = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let d = self.factors[i] as usize;
            x[i] = (idx % d) as u64;
            idx /= d;
        }
        x
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    /// Decomposes an abelian group given by its addition table. Returns the
    /// group and the coordinates of each element.
    pub fn from_cayley(order: usize, add: impl Fn(usize, usize) -> usize, zero: usize) -> (Self, Vec<Vec<u64>>) {
        // Greedy generators with a triangular presentation.
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; order];
        coords[zero] = Some(vec![]);
        let mut members = vec![zero];
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut gens = Vec::new();
        for e in 0..order {
            if coords[e].is_some() {
                continue;
            }
            let k = gens.len();
            gens.push(e);
            for c in coords.iter_mut().flatten() {
                c.push(0);
            }
            for r in relations.iter_mut() {
                r.push(0);
            }
            // smallest m with m*e already in the span
            let mut m = 1i64;
            let mut x = e;
            while coords[x].is_none() {
                x = add(x, e);
                m += 1;
            }
            let mut rel = coords[x].clone().unwrap().iter().map(|&c| -c).collect::<Vec<_>>();
            rel[k] += m;
            relations.push(rel);
            let old = members.clone();
            let mut step = e;
            for j in 1..m {
                for &s in &old {
                    let y = add(s, step);
                    let mut c = coords[s].clone().unwrap();
                    c[k] = j;
                    debug_assert!(coords[y].is_none());
                    coords[y] = Some(c);
                    members.push(y);
                }
                step = add(step, e);
            }
        }
        let k = gens.len();
        let rel = Matrix::from_rows(k, &relations).map(|&x| BigInt::from(x));
        let s = smith(&Integers, rel, Track { v: true, ..Track::NONE }).expect("integer elimination is infallible");
        // the diagonal entries are orders of elements, so they fit
        let diag: Vec<u64> = s.diagonal().iter().map(|d| d.magnitude().try_into().expect("element order")).collect();
        let v = s.v.unwrap();
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| diag[i]).collect();
        let out = coords
            .into_iter()
            .map(|c| {
                let c = c.expect("generators span the group");
                keep.iter()
                    .zip(&factors)
                    .map(|(&i, &d)| {
                        let t: BigInt = (0..k).map(|j| c[j] * &v[(j, i)]).sum();
                        t.mod_floor(&BigInt::from(d)).try_into().expect("residue")
                    })
                    .collect()
            })
            .collect();
        (FiniteAbelianGroup { factors }, out)
    }
}

/// Homomorphism given by the images of the canonical generators (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: FiniteAbelianGroup,
    codomain: FiniteAbelianGroup,
    matrix: Matrix<u64>,
}

impl GroupHom {
    pub fn new(domain: FiniteAbelianGroup, codomain: FiniteAbelianGroup, images: &[Vec<u64>]) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                domain.rank(),
                images.len()
            )));
        }
        let mut matrix = Matrix::filled(codomain.rank(), domain.rank(), 0u64);
        for (j, img) in images.iter().enumerate() {
            if !codomain.contains(img) {
                return Err(Error::Invalid(format!("image {img:?} is not an element of the codomain")));
            }
            let d = domain.invariant_factors()[j];
            for (i, (&a, &e)) in img.iter().zip(codomain.invariant_factors()).enumerate() {
                if !(a as u128 * d as u128).is_multiple_of(e as u128) {
                    return Err(Error::Invalid(format!(
                        "generator {j} has order {d} but its image {img:?} does not"
                    )));
                }
                matrix[(i, j)] = a;
            }
        }
        Ok(GroupHom { domain, codomain, matrix })
    }

    pub fn zero(domain: FiniteAbelianGroup, codomain: FiniteAbelianGroup) -> Self {
        let matrix = Matrix::filled(codomain.rank(), domain.rank(), 0);
        GroupHom { domain, codomain, matrix }
    }

    pub fn identity(g: FiniteAbelianGroup) -> Self {
        let images: Vec<Vec<u64>> = (0..g.rank()).map(|i| g.generator(i)).collect();
        GroupHom::new(g.clone(), g, &images).unwrap()
    }

    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<u64> {
        &self.matrix
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let e = self.codomain.invariant_factors();
        (0..self.codomain.rank())
            .map(|i| {
                let s: u128 = x.iter().enumerate().map(|(j, &a)| a as u128 * self.matrix[(i, j)] as u128).sum();
                (s % e[i] as u128) as u64
            })
            .collect()
    }
}

/// `ker(h) / im(k)` together with a deterministic section.
#[derive(Clone, Debug)]
pub struct GroupSubquotient {
    group: FiniteAbelianGroup,
    ambient: FiniteAbelianGroup,
    inner: Subquotient,
}

impl GroupSubquotient {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Lexicographically least element of `ker(h)` in the given class.
    pub fn section(&self, class: &[u64]) -> Vec<u64> {
        self.inner.representative(class)
    }

    /// Class of an element of `ker(h)`; `None` if `x` is not in the kernel.
    pub fn class_of(&self, x: &[u64]) -> Option<Vec<u64>> {
        if !self.ambient.contains(x) {
            return None;
        }
        self.inner.coordinates(x)
    }
}

/// Lattice of the relations `d_i e_i` of a group lifted to `(Z/N)^k`.
pub(crate) fn relation_rows(g: &FiniteAbelianGroup) -> Vec<Vec<u64>> {
    (0..g.rank())
        .map(|i| {
            let mut r = g.zero();
            r[i] = g.invariant_factors()[i];
            r
        })
        .collect()
}

pub fn subquotient(h: &GroupHom, k: &GroupHom) -> Result<GroupSubquotient> {
    if k.codomain() != h.domain() {
        return Err(Error::Invalid("codomain of k differs from domain of h".into()));
    }
    for j in 0..k.domain().rank() {
        let g = k.domain().generator(j);
        let img = h.apply(&k.apply(&g));
        if img.iter().any(|&a| a != 0) {
            return Err(Error::NonzeroComposite { witness: g });
        }
    }
    let g = h.domain().clone();
    let n = lcm(g.exponent(), h.codomain().exponent());
    let dim = g.rank();
    let l1 = kernel_with_moduli(h.matrix(), h.codomain().invariant_factors(), n);
    let mut l2 = relation_rows(&g);
    for j in 0..k.domain().rank() {
        l2.push(k.matrix().col(j));
    }
    let mut l1 = l1;
    l1.extend(relation_rows(&g));
    let inner = Subquotient::new(dim, n, &l1, &l2);
    let group = FiniteAbelianGroup::new(inner.factors().to_vec())?;
    Ok(GroupSubquotient { group, ambient: g, inner })
}
