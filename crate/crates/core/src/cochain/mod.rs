//! Normalized cochains over `(R, M)`, the differentials and the relation checks.

pub mod basis;
pub mod differential;
pub mod relations;

pub use basis::Basis;
pub use differential::{delta1, delta2};
pub use relations::{flip_lambda, is_ann_structure, is_cocycle3, AnnStructure, RelationReport, Violation};

use crate::algebra::{Bimodule, FiniteRing};
use crate::error::{invalid, Result};
use std::fmt::Debug;

/// One table of a cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// the single table of a 1-cochain
    A,
    Mu,
    Nu,
    Zeta,
    Eta,
    Alpha,
    Lambda,
    Rho,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::A | Component::Alpha => "alpha",
            Component::Mu => "mu",
            Component::Nu => "nu",
            Component::Zeta => "zeta",
            Component::Eta => "eta",
            Component::Lambda => "lambda",
            Component::Rho => "rho",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Component::A => 1,
            Component::Mu | Component::Nu | Component::Eta => 2,
            _ => 3,
        }
    }

    /// Whether a normalized cochain may be nonzero at `args`.
    pub fn is_free(self, ring: &FiniteRing, args: &[usize]) -> bool {
        let nz = |x: usize| x != 0;
        let nt = |x: usize| !ring.is_trivial_arg(x);
        match self {
            Component::A => nt(args[0]),
            Component::Mu | Component::Eta => nz(args[0]) && nz(args[1]),
            Component::Nu => nt(args[0]) && nt(args[1]),
            Component::Zeta => args.iter().all(|&x| nz(x)),
            Component::Alpha => args.iter().all(|&x| nt(x)),
            Component::Lambda => nt(args[0]) && nz(args[1]) && nz(args[2]),
            Component::Rho => nz(args[0]) && nz(args[1]) && nt(args[2]),
        }
    }
}

pub fn flat_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

pub fn unflatten(n: usize, arity: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for i in (0..arity).rev() {
        out[i] = idx % n;
        idx /= n;
    }
    out
}

/// Common shape of the cochain types: a fixed list of tables over `R^k`
/// holding module element indices.
pub trait Cochain: Clone + Debug + PartialEq + Eq {
    const LEVEL: u8;
    const COMPONENTS: &'static [Component];

    fn zero(n: usize) -> Self;
    fn ring_order(&self) -> usize;
    fn table(&self, i: usize) -> &[usize];
    fn table_mut(&mut self, i: usize) -> &mut [usize];

    fn get(&self, i: usize, args: &[usize]) -> usize {
        self.table(i)[flat_index(self.ring_order(), args)]
    }

    fn set(&mut self, i: usize, args: &[usize], value: usize) {
        let n = self.ring_order();
        self.table_mut(i)[flat_index(n, args)] = value;
    }

    fn is_zero(&self) -> bool {
        (0..Self::COMPONENTS.len()).all(|i| self.table(i).iter().all(|&v| v == 0))
    }

    /// First position violating normalization, if any.
    fn normalization_violation(&self, ring: &FiniteRing) -> Option<(Component, Vec<usize>)> {
        let n = self.ring_order();
        for (i, &c) in Self::COMPONENTS.iter().enumerate() {
            for (idx, &v) in self.table(i).iter().enumerate() {
                let args = unflatten(n, c.arity(), idx);
                if v != 0 && !c.is_free(ring, &args) {
                    return Some((c, args));
                }
            }
        }
        None
    }

    fn is_normalized(&self, ring: &FiniteRing) -> bool {
        self.normalization_violation(ring).is_none()
    }

    /// Pointwise combination `a * self + b * other`.
    fn combine(&self, m: &Bimodule, a: i64, other: &Self, b: i64) -> Self {
        let mut out = self.clone();
        for i in 0..Self::COMPONENTS.len() {
            let t = out.table_mut(i);
            for (k, v) in t.iter_mut().enumerate() {
                *v = m.add(m.times(a, *v), m.times(b, other.table(i)[k]));
            }
        }
        out
    }

    fn sub(&self, m: &Bimodule, other: &Self) -> Self {
        self.combine(m, 1, other, -1)
    }

    fn add(&self, m: &Bimodule, other: &Self) -> Self {
        self.combine(m, 1, other, 1)
    }

    /// Applies `f` to every table value.
    fn map_values(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = self.clone();
        for i in 0..Self::COMPONENTS.len() {
            for v in out.table_mut(i).iter_mut() {
                *v = f(*v);
            }
        }
        out
    }

    /// Checks table lengths and that values are module elements.
    fn check_shape(&self, m: &Bimodule) -> Result<()> {
        let n = m.ring().order();
        if self.ring_order() != n {
            return invalid(format!("cochain is over a ring of order {}, expected {n}", self.ring_order()));
        }
        for (i, c) in Self::COMPONENTS.iter().enumerate() {
            let t = self.table(i);
            if t.len() != n.pow(c.arity() as u32) {
                return invalid(format!("table {} has length {}", c.name(), t.len()));
            }
            if t.iter().any(|&v| v >= m.order()) {
                return invalid(format!("table {} holds a value outside the module", c.name()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain1 {
    n: usize,
    pub alpha: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain2 {
    n: usize,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
}

/// Stores the cocycle-side `lambda`; see [`flip_lambda`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain3 {
    n: usize,
    pub zeta: Vec<usize>,
    pub eta: Vec<usize>,
    pub alpha: Vec<usize>,
    pub lambda: Vec<usize>,
    pub rho: Vec<usize>,
}

impl Cochain for Cochain1 {
    const LEVEL: u8 = 1;
    const COMPONENTS: &'static [Component] = &[Component::A];

    fn zero(n: usize) -> Self {
        Cochain1 { n, alpha: vec![0; n] }
    }
    fn ring_order(&self) -> usize {
        self.n
    }
    fn table(&self, _: usize) -> &[usize] {
        &self.alpha
    }
    fn table_mut(&mut self, _: usize) -> &mut [usize] {
        &mut self.alpha
    }
}

impl Cochain for Cochain2 {
    const LEVEL: u8 = 2;
    const COMPONENTS: &'static [Component] = &[Component::Mu, Component::Nu];

    fn zero(n: usize) -> Self {
        Cochain2 { n, mu: vec![0; n * n], nu: vec![0; n * n] }
    }
    fn ring_order(&self) -> usize {
        self.n
    }
    fn table(&self, i: usize) -> &[usize] {
        [&self.mu, &self.nu][i]
    }
    fn table_mut(&mut self, i: usize) -> &mut [usize] {
        match i {
            0 => &mut self.mu,
            _ => &mut self.nu,
        }
    }
}

impl Cochain for Cochain3 {
    const LEVEL: u8 = 3;
    const COMPONENTS: &'static [Component] =
        &[Component::Zeta, Component::Eta, Component::Alpha, Component::Lambda, Component::Rho];

    fn zero(n: usize) -> Self {
        let n3 = n * n * n;
        Cochain3 { n, zeta: vec![0; n3], eta: vec![0; n * n], alpha: vec![0; n3], lambda: vec![0; n3], rho: vec![0; n3] }
    }
    fn ring_order(&self) -> usize {
        self.n
    }
    fn table(&self, i: usize) -> &[usize] {
        [&self.zeta, &self.eta, &self.alpha, &self.lambda, &self.rho][i]
    }
    fn table_mut(&mut self, i: usize) -> &mut [usize] {
        match i {
            0 => &mut self.zeta,
            1 => &mut self.eta,
            2 => &mut self.alpha,
            3 => &mut self.lambda,
            _ => &mut self.rho,
        }
    }
}

impl Cochain1 {
    pub fn from_table(n: usize, alpha: Vec<usize>) -> Self {
        Cochain1 { n, alpha }
    }
    #[inline]
    pub fn a(&self, x: usize) -> usize {
        self.alpha[x]
    }
}

impl Cochain2 {
    pub fn from_tables(n: usize, mu: Vec<usize>, nu: Vec<usize>) -> Self {
        Cochain2 { n, mu, nu }
    }
    #[inline]
    pub fn mu(&self, x: usize, y: usize) -> usize {
        self.mu[x * self.n + y]
    }
    #[inline]
    pub fn nu(&self, x: usize, y: usize) -> usize {
        self.nu[x * self.n + y]
    }
}

impl Cochain3 {
    pub fn from_tables(
        n: usize,
        zeta: Vec<usize>,
        eta: Vec<usize>,
        alpha: Vec<usize>,
        lambda: Vec<usize>,
        rho: Vec<usize>,
    ) -> Self {
        Cochain3 { n, zeta, eta, alpha, lambda, rho }
    }
    #[inline]
    fn i3(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.n + y) * self.n + z
    }
    #[inline]
    pub fn zeta(&self, x: usize, y: usize, z: usize) -> usize {
        self.zeta[self.i3(x, y, z)]
    }
    #[inline]
    pub fn eta(&self, x: usize, y: usize) -> usize {
        self.eta[x * self.n + y]
    }
    #[inline]
    pub fn alpha(&self, x: usize, y: usize, z: usize) -> usize {
        self.alpha[self.i3(x, y, z)]
    }
    #[inline]
    pub fn lambda(&self, x: usize, y: usize, z: usize) -> usize {
        self.lambda[self.i3(x, y, z)]
    }
    #[inline]
    pub fn rho(&self, x: usize, y: usize, z: usize) -> usize {
        self.rho[self.i3(x, y, z)]
    }

    /// Value of a level-3 component at `args` (`eta` uses the first two).
    #[inline]
    pub fn value(&self, c: Component, args: [usize; 3]) -> usize {
        let [x, y, z] = args;
        match c {
            Component::Zeta => self.zeta(x, y, z),
            Component::Eta => self.eta(x, y),
            Component::Alpha => self.alpha(x, y, z),
            Component::Lambda => self.lambda(x, y, z),
            Component::Rho => self.rho(x, y, z),
            _ => panic!("{c:?} is not a level-3 component"),
        }
    }
}

/// A cochain of runtime-selected level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyCochain {
    One(Cochain1),
    Two(Cochain2),
    Three(Cochain3),
}

impl AnyCochain {
    pub fn level(&self) -> u8 {
        match self {
            AnyCochain::One(_) => 1,
            AnyCochain::Two(_) => 2,
            AnyCochain::Three(_) => 3,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnyCochain::One(c) => c.is_zero(),
            AnyCochain::Two(c) => c.is_zero(),
            AnyCochain::Three(c) => c.is_zero(),
        }
    }

    pub fn as_one(&self) -> Option<&Cochain1> {
        match self {
            AnyCochain::One(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_two(&self) -> Option<&Cochain2> {
        match self {
            AnyCochain::Two(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_three(&self) -> Option<&Cochain3> {
        match self {
            AnyCochain::Three(c) => Some(c),
            _ => None,
        }
    }
}

impl From<Cochain1> for AnyCochain {
    fn from(c: Cochain1) -> Self {
        AnyCochain::One(c)
    }
}

impl From<Cochain2> for AnyCochain {
    fn from(c: Cochain2) -> Self {
        AnyCochain::Two(c)
    }
}

impl From<Cochain3> for AnyCochain {
    fn from(c: Cochain3) -> Self {
        AnyCochain::Three(c)
    }
}

/// Every normalized cochain of type `C`, one at a time.
pub struct CochainStream<C: Cochain> {
    positions: Vec<(usize, usize)>,
    module_order: usize,
    digits: Vec<usize>,
    current: C,
    done: bool,
}

impl<C: Cochain> Iterator for CochainStream<C> {
    type Item = C;
    fn next(&mut self) -> Option<C> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            let (c, k) = self.positions[i];
            if self.digits[i] < self.module_order {
                self.current.table_mut(c)[k] = self.digits[i];
                break;
            }
            self.digits[i] = 0;
            self.current.table_mut(c)[k] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Stream mode of the cochain enumeration: yields every normalized cochain exactly once.
pub fn stream_cochains<C: Cochain>(m: &Bimodule, limit: u128) -> Result<CochainStream<C>> {
    let basis = Basis::new::<C>(m);
    let count = (m.order() as u128).checked_pow(basis.position_count() as u32);
    match count {
        Some(c) if c <= limit => {}
        _ => {
            return Err(crate::Error::SizeGuard {
                what: format!("enumerating normalized {}-cochains", C::LEVEL),
                needed: count.unwrap_or(u128::MAX),
                limit,
            })
        }
    }
    let positions = basis.positions().to_vec();
    Ok(CochainStream {
        digits: vec![0; positions.len()],
        positions,
        module_order: m.order(),
        current: C::zero(m.ring().order()),
        done: false,
    })
}

/// Basis mode of the cochain enumeration.
pub fn cochain_group<C: Cochain>(m: &Bimodule) -> (crate::algebra::FiniteAbelianGroup, Basis) {
    let b = Basis::new::<C>(m);
    (b.group(), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteRing;

    #[test]
    fn free_positions_over_z2() {
        let r = FiniteRing::cyclic(2).unwrap();
        let m = Bimodule::regular(&r);
        assert_eq!(cochain_group::<Cochain3>(&m).0.invariant_factors(), &[2, 2]);
        assert_eq!(cochain_group::<Cochain2>(&m).0.invariant_factors(), &[2]);
        assert!(cochain_group::<Cochain1>(&m).0.is_trivial());
    }

    #[test]
    fn stream_counts() {
        let r = FiniteRing::cyclic(3).unwrap();
        let m = Bimodule::regular(&r);
        // C2(Z3): mu at 4 positions, nu at (2,2) only
        let all: Vec<Cochain2> = stream_cochains(&m, 1 << 20).unwrap().collect();
        assert_eq!(all.len(), 3usize.pow(5));
        let mut dedup = all.clone();
        dedup.sort_by(|a, b| (&a.mu, &a.nu).cmp(&(&b.mu, &b.nu)));
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert!(all.iter().all(|c| c.is_normalized(&r)));
        assert!(stream_cochains::<Cochain3>(&m, 1000).is_err());
    }
}
