//! Coordinates on the group of normalized cochains.
//!
//! A cochain is determined by its values at the free positions. Each value
//! contributes the residue tuple of a module element, so the cochain group is
//! `M^p` and is handled as `(Z/N)^{p·k}` with `N` the exponent of `M` and `k`
//! its number of invariant factors.

use super::{unflatten, Cochain, Component};
use crate::algebra::{Bimodule, FiniteAbelianGroup};

#[derive(Clone, Debug)]
pub struct Basis {
    // (component slot, flat table index)
    positions: Vec<(usize, usize)>,
    components: Vec<Component>,
    ring_order: usize,
    factors: Vec<u64>,
    modulus: u64,
}

impl Basis {
    pub fn new<C: Cochain>(m: &Bimodule) -> Self {
        let ring = m.ring();
        let n = ring.order();
        let mut positions = Vec::new();
        for (i, &c) in C::COMPONENTS.iter().enumerate() {
            for idx in 0..n.pow(c.arity() as u32) {
                if c.is_free(ring, &unflatten(n, c.arity(), idx)) {
                    positions.push((i, idx));
                }
            }
        }
        Basis {
            positions,
            components: C::COMPONENTS.to_vec(),
            ring_order: n,
            factors: m.factors().to_vec(),
            modulus: m.exponent().max(1),
        }
    }

    /// Free positions as (component slot, flat index), in coordinate order.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    /// Component and argument tuple of a free position.
    pub fn describe(&self, p: usize) -> (Component, Vec<usize>) {
        let (slot, idx) = self.positions[p];
        let c = self.components[slot];
        (c, unflatten(self.ring_order, c.arity(), idx))
    }

    /// Index of the free position `(slot, flat)`, if free.
    pub fn position_of(&self, slot: usize, flat: usize) -> Option<usize> {
        self.positions.binary_search(&(slot, flat)).ok()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.positions.len() * self.rank()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of each coordinate.
    pub fn moduli(&self) -> Vec<u64> {
        self.positions.iter().flat_map(|_| self.factors.iter().copied()).collect()
    }

    /// The cochain group in invariant-factor form. Its factors are the
    /// coordinate moduli sorted, so its coordinates are a permutation of ours.
    pub fn group(&self) -> FiniteAbelianGroup {
        let mut f = self.moduli();
        f.sort_unstable();
        FiniteAbelianGroup::new(f).expect("sorted factors of a chain form a chain")
    }

    fn sorting_permutation(&self) -> Vec<usize> {
        let moduli = self.moduli();
        let mut idx: Vec<usize> = (0..moduli.len()).collect();
        idx.sort_by_key(|&i| moduli[i]);
        idx
    }

    /// Coordinates with respect to [`Basis::group`].
    pub fn to_group_coords(&self, v: &[u64]) -> Vec<u64> {
        let moduli = self.moduli();
        self.sorting_permutation().into_iter().map(|i| v[i] % moduli[i]).collect()
    }

    pub fn from_group_coords(&self, g: &[u64]) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        for (k, i) in self.sorting_permutation().into_iter().enumerate() {
            v[i] = g[k];
        }
        v
    }

    pub fn to_vector<C: Cochain>(&self, m: &Bimodule, c: &C) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.dim());
        for &(slot, idx) in &self.positions {
            v.extend_from_slice(m.coords(c.table(slot)[idx]));
        }
        v
    }

    /// The cochain with the given coordinates (residues are reduced).
    pub fn from_vector<C: Cochain>(&self, m: &Bimodule, v: &[u64]) -> C {
        let k = self.rank();
        let mut c = C::zero(self.ring_order);
        for (p, &(slot, idx)) in self.positions.iter().enumerate() {
            c.table_mut(slot)[idx] = m.from_coords(&v[p * k..(p + 1) * k]);
        }
        c
    }

    /// Cochain with a single canonical module generator at coordinate `j`.
    pub fn unit<C: Cochain>(&self, m: &Bimodule, j: usize) -> C {
        let mut v = vec![0; self.dim()];
        v[j] = 1;
        self.from_vector(m, &v)
    }

    /// Rows `d_j e_j` presenting the relations of the cochain group inside `(Z/N)^dim`.
    pub fn lattice_rows(&self) -> Vec<Vec<u64>> {
        let dim = self.dim();
        self.moduli()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != self.modulus)
            .map(|(j, &d)| {
                let mut r = vec![0; dim];
                r[j] = d;
                r
            })
            .collect()
    }

    /// Number of cochains, `|M|^positions`, saturating.
    pub fn cochain_count(&self, m: &Bimodule) -> u128 {
        (m.order() as u128).checked_pow(self.positions.len() as u32).unwrap_or(u128::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteRing;
    use crate::cochain::{Cochain1, Cochain2, Cochain3};

    #[test]
    fn round_trip() {
        let r = FiniteRing::cyclic(4).unwrap();
        let m = Bimodule::regular(&r);
        let b = Basis::new::<Cochain2>(&m);
        // mu on {1,2,3}^2, nu on {2,3}^2
        assert_eq!(b.position_count(), 13);
        let v: Vec<u64> = (0..b.dim() as u64).map(|i| i % 4).collect();
        let c: Cochain2 = b.from_vector(&m, &v);
        assert!(c.is_normalized(&r));
        assert_eq!(b.to_vector(&m, &c), v);
    }

    #[test]
    fn describe_positions() {
        let r = FiniteRing::cyclic(2).unwrap();
        let m = Bimodule::regular(&r);
        let b = Basis::new::<Cochain3>(&m);
        assert_eq!(b.describe(0), (Component::Zeta, vec![1, 1, 1]));
        assert_eq!(b.describe(1), (Component::Eta, vec![1, 1]));
        assert!(b.lattice_rows().is_empty());
        assert_eq!(b.group().invariant_factors(), &[2, 2]);
    }

    #[test]
    fn group_coordinates_permute() {
        // Z2 x Z4 over Z4, both actions by multiplication
        let r = FiniteRing::cyclic(4).unwrap();
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let elems: Vec<Vec<u64>> = g.elements().collect();
        let scale = |x: usize, a: usize| {
            let c: Vec<u64> = elems[a].iter().zip([2u64, 4]).map(|(&v, d)| v * x as u64 % d).collect();
            g.index_of(&c)
        };
        let m = Bimodule::from_actions(&r, g.clone(), elems.clone(), scale, |a, x| scale(x, a)).unwrap();
        let b = Basis::new::<Cochain1>(&m);
        // a(2), a(3)
        assert_eq!(b.group().invariant_factors(), &[2, 2, 4, 4]);
        let v = vec![1, 3, 0, 2];
        let g = b.to_group_coords(&v);
        assert_eq!(g, vec![1, 0, 3, 2]);
        assert_eq!(b.from_group_coords(&g), v);
    }
}
