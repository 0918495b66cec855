use super::group::FiniteAbelianGroup;
use super::ring::FiniteRing;
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Largest module handled with precomputed tables.
pub const MAX_MODULE_ORDER: usize = 4096;

/// A finite `R`-bimodule. Elements are indices; index 0 is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    ring: FiniteRing,
    group: FiniteAbelianGroup,
    coords: Vec<Vec<u64>>,
    // lexicographic rank of the coordinates -> element index
    by_rank: Vec<usize>,
    add: Vec<usize>,
    neg: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BimoduleSpec {
    Regular,
    Trivial,
    /// `left[r][m]` and `right[m][r]` are residue tuples; `m` runs over the
    /// group elements in lexicographic order.
    Tables {
        invariant_factors: Vec<u64>,
        left: Vec<Vec<Vec<u64>>>,
        right: Vec<Vec<Vec<u64>>>,
    },
}

pub fn make_bimodule(ring: &FiniteRing, spec: &BimoduleSpec) -> Result<Bimodule> {
    match spec {
        BimoduleSpec::Regular => Ok(Bimodule::regular(ring)),
        BimoduleSpec::Trivial => Ok(Bimodule::trivial(ring)),
        BimoduleSpec::Tables { invariant_factors, left, right } => {
            let group = FiniteAbelianGroup::new(invariant_factors.clone())?;
            let m = group.order() as usize;
            if m > MAX_MODULE_ORDER {
                return Err(Error::SizeGuard { what: "module order".into(), needed: m as u128, limit: MAX_MODULE_ORDER as u128 });
            }
            let n = ring.order();
            if left.len() != n || left.iter().any(|r| r.len() != m) {
                return invalid(format!("left action table must be {n}x{m}"));
            }
            if right.len() != m || right.iter().any(|r| r.len() != n) {
                return invalid(format!("right action table must be {m}x{n}"));
            }
            for t in left.iter().chain(right).flatten() {
                if !group.contains(t) {
                    return invalid(format!("{t:?} is not an element of {:?}", group.invariant_factors()));
                }
            }
            let l: Vec<usize> = left.iter().flatten().map(|t| group.index_of(t)).collect();
            let mut r = vec![0; m * n];
            for (mi, row) in right.iter().enumerate() {
                for (ri, t) in row.iter().enumerate() {
                    r[mi * n + ri] = group.index_of(t);
                }
            }
            let coords = group.elements().collect();
            Bimodule::assemble(ring.clone(), group, coords, l, r)
        }
    }
}

fn axiom<T>(name: &str, witness: Vec<usize>) -> Result<T> {
    Err(Error::Axiom { structure: "bimodule", axiom: name.into(), witness })
}

impl Bimodule {
    /// `left[r * |M| + m] = r m`, `right[m * |R| + r] = m r`; validates every axiom.
    pub(crate) fn assemble(
        ring: FiniteRing,
        group: FiniteAbelianGroup,
        coords: Vec<Vec<u64>>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        let m = coords.len();
        debug_assert_eq!(m as u128, group.order());
        let mut by_rank = vec![usize::MAX; m];
        for (i, c) in coords.iter().enumerate() {
            by_rank[group.index_of(c)] = i;
        }
        debug_assert!(by_rank.iter().all(|&i| i != usize::MAX));
        debug_assert!(coords[0].iter().all(|&x| x == 0));
        let mut add = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                add[a * m + b] = by_rank[group.index_of(&group.add(&coords[a], &coords[b]))];
            }
        }
        let neg = (0..m).map(|a| by_rank[group.index_of(&group.neg(&coords[a]))]).collect();
        let generators = (0..group.rank()).map(|i| by_rank[group.index_of(&group.generator(i))]).collect();
        let module = Bimodule { ring, group, coords, by_rank, add, neg, left, right, generators };
        module.validate()?;
        Ok(module)
    }

    fn validate(&self) -> Result<()> {
        let r = &self.ring;
        let m = self.order();
        for x in r.elements() {
            for y in r.elements() {
                for a in 0..m {
                    if self.left(r.add(x, y), a) != self.add(self.left(x, a), self.left(y, a)) {
                        return axiom("(x+y)m = xm + ym", vec![x, y, a]);
                    }
                    if self.right(a, r.add(x, y)) != self.add(self.right(a, x), self.right(a, y)) {
                        return axiom("m(x+y) = mx + my", vec![x, y, a]);
                    }
                    if self.left(r.mul(x, y), a) != self.left(x, self.left(y, a)) {
                        return axiom("(xy)m = x(ym)", vec![x, y, a]);
                    }
                    if self.right(a, r.mul(x, y)) != self.right(self.right(a, x), y) {
                        return axiom("m(xy) = (mx)y", vec![x, y, a]);
                    }
                    if self.right(self.left(x, a), y) != self.left(x, self.right(a, y)) {
                        return axiom("(xm)y = x(my)", vec![x, y, a]);
                    }
                }
            }
        }
        for x in r.elements() {
            for a in 0..m {
                for b in 0..m {
                    if self.left(x, self.add(a, b)) != self.add(self.left(x, a), self.left(x, b)) {
                        return axiom("x(m+n) = xm + xn", vec![x, a, b]);
                    }
                    if self.right(self.add(a, b), x) != self.add(self.right(a, x), self.right(b, x)) {
                        return axiom("(m+n)x = mx + nx", vec![x, a, b]);
                    }
                }
            }
        }
        for a in 0..m {
            if self.left(r.unit(), a) != a || self.right(a, r.unit()) != a {
                return axiom("1m = m = m1", vec![a]);
            }
            if self.left(0, a) != 0 || self.right(a, 0) != 0 {
                return axiom("0m = 0 = m0", vec![a]);
            }
        }
        Ok(())
    }

    /// `R` acting on itself; element indices agree with ring indices.
    pub fn regular(ring: &FiniteRing) -> Self {
        let n = ring.order();
        let (group, coords) = ring.additive_group();
        let left = (0..n * n).map(|i| ring.mul(i / n, i % n)).collect();
        let right = (0..n * n).map(|i| ring.mul(i / n, i % n)).collect();
        Bimodule::assemble(ring.clone(), group, coords, left, right).expect("regular bimodule")
    }

    pub fn trivial(ring: &FiniteRing) -> Self {
        let n = ring.order();
        Bimodule::assemble(ring.clone(), FiniteAbelianGroup::trivial(), vec![vec![]], vec![0; n], vec![0; n])
            .expect("trivial bimodule")
    }

    /// Restriction of scalars along a ring homomorphism `f0: source -> self.ring`.
    pub fn pullback(&self, source: &FiniteRing, f0: &[usize]) -> Result<Self> {
        if f0.len() != source.order() {
            return invalid("ring map table has the wrong length");
        }
        let (n, m) = (source.order(), self.order());
        let left = (0..n * m).map(|i| self.left(f0[i / m], i % m)).collect();
        let right = (0..m * n).map(|i| self.right(i / n, f0[i % n])).collect();
        Bimodule::assemble(source.clone(), self.group.clone(), self.coords.clone(), left, right)
    }

    /// A module with the given elements and actions, validated.
    pub fn from_actions(
        ring: &FiniteRing,
        group: FiniteAbelianGroup,
        coords: Vec<Vec<u64>>,
        left: impl Fn(usize, usize) -> usize,
        right: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let (n, m) = (ring.order(), coords.len());
        let l = (0..n * m).map(|i| left(i / m, i % m)).collect();
        let r = (0..m * n).map(|i| right(i / n, i % n)).collect();
        Bimodule::assemble(ring.clone(), group, coords, l, r)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }

    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.coords.len() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    #[inline]
    pub fn left(&self, r: usize, a: usize) -> usize {
        self.left[r * self.coords.len() + a]
    }

    #[inline]
    pub fn right(&self, a: usize, r: usize) -> usize {
        self.right[a * self.ring.order() + r]
    }

    pub fn coords(&self, a: usize) -> &[u64] {
        &self.coords[a]
    }

    /// Element with the given residues (reduced modulo the invariant factors).
    pub fn from_coords(&self, c: &[u64]) -> usize {
        let reduced: Vec<u64> = c.iter().zip(self.factors()).map(|(&x, &d)| x % d).collect();
        self.by_rank[self.group.index_of(&reduced)]
    }

    /// Element for residues given exactly; `None` when out of range.
    pub fn try_from_coords(&self, c: &[u64]) -> Option<usize> {
        self.group.contains(c).then(|| self.by_rank[self.group.index_of(c)])
    }

    /// Canonical generators, one per invariant factor.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn times(&self, k: i64, a: usize) -> usize {
        let c: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(self.factors())
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
            .collect();
        self.from_coords(&c)
    }

    /// Left action on module elements as a table indexed by lexicographic rank.
    pub fn left_table(&self) -> Vec<Vec<Vec<u64>>> {
        self.ring
            .elements()
            .map(|r| self.group.elements().map(|c| self.coords(self.left(r, self.from_coords(&c))).to_vec()).collect())
            .collect()
    }

    pub fn right_table(&self) -> Vec<Vec<Vec<u64>>> {
        self.group
            .elements()
            .map(|c| self.ring.elements().map(|r| self.coords(self.right(self.from_coords(&c), r)).to_vec()).collect())
            .collect()
    }
}
