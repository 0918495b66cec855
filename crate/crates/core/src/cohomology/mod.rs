//! Cocycles, coboundaries and cohomology in degrees 1 to 3, and the
//! classification of regular Ann-structures by the third cohomology group.

use crate::algebra::zmod::{kernel, kernel_with_moduli, Howell, Solver, Subquotient};
use crate::algebra::{Bimodule, FiniteAbelianGroup, GroupHom, Matrix};
use crate::cochain::relations::{for_each_instance, relation_terms};
use crate::cochain::{
    delta1, delta2, flat_index, is_cocycle3, AnnStructure, AnyCochain, Basis, Cochain, Cochain1, Cochain2, Cochain3,
    Component,
};
use crate::error::{invalid, Error, Result};
use crate::guard::SizeGuard;

/// `u -> l u r` on module coordinates, one matrix per pair of optional scalars.
struct ActionMatrices {
    n: usize,
    mats: Vec<Vec<Vec<u64>>>,
}

impl ActionMatrices {
    fn new(m: &Bimodule) -> Self {
        let n = m.ring().order();
        let k = m.rank();
        let mut mats = Vec::with_capacity((n + 1) * (n + 1));
        for l in 0..=n {
            for r in 0..=n {
                let mut e = vec![vec![0u64; k]; k];
                for (j, &g) in m.generators().iter().enumerate() {
                    let mut v = g;
                    if l > 0 {
                        v = m.left(l - 1, v);
                    }
                    if r > 0 {
                        v = m.right(v, r - 1);
                    }
                    for (i, &c) in m.coords(v).iter().enumerate() {
                        e[i][j] = c;
                    }
                }
                mats.push(e);
            }
        }
        ActionMatrices { n, mats }
    }

    fn get(&self, l: Option<usize>, r: Option<usize>) -> &[Vec<u64>] {
        let li = l.map_or(0, |x| x + 1);
        let ri = r.map_or(0, |x| x + 1);
        &self.mats[li * (self.n + 1) + ri]
    }
}

/// Matrix of a linear map between cochain groups, column `j` being the image of unit `j`.
fn map_matrix<C: Cochain, D: Cochain>(m: &Bimodule, from: &Basis, to: &Basis, f: impl Fn(&C) -> D) -> Matrix<u64> {
    let mut a = Matrix::filled(to.dim(), from.dim(), 0u64);
    for j in 0..from.dim() {
        let img = to.to_vector(m, &f(&from.unit::<C>(m, j)));
        for (i, v) in img.into_iter().enumerate() {
            a[(i, j)] = v;
        }
    }
    a
}

fn columns(a: &Matrix<u64>) -> Vec<Vec<u64>> {
    (0..a.ncols()).map(|j| a.col(j)).collect()
}

fn level_basis(m: &Bimodule, level: u8) -> Result<Basis> {
    match level {
        1 => Ok(Basis::new::<Cochain1>(m)),
        2 => Ok(Basis::new::<Cochain2>(m)),
        3 => Ok(Basis::new::<Cochain3>(m)),
        _ => invalid(format!("cochain level {level} is not supported")),
    }
}

fn guard_levels(m: &Bimodule, guard: &SizeGuard, levels: &[u8]) -> Result<()> {
    for &l in levels {
        let b = level_basis(m, l)?;
        guard.check_generators(format!("generators of the {l}-cochain group"), b.dim())?;
    }
    Ok(())
}

fn vector_to_cochain(m: &Bimodule, basis: &Basis, level: u8, v: &[u64]) -> AnyCochain {
    match level {
        1 => AnyCochain::One(basis.from_vector(m, v)),
        2 => AnyCochain::Two(basis.from_vector(m, v)),
        _ => AnyCochain::Three(basis.from_vector(m, v)),
    }
}

fn cochain_to_vector(m: &Bimodule, basis: &Basis, c: &AnyCochain) -> Vec<u64> {
    match c {
        AnyCochain::One(c) => basis.to_vector(m, c),
        AnyCochain::Two(c) => basis.to_vector(m, c),
        AnyCochain::Three(c) => basis.to_vector(m, c),
    }
}

/// Row span of the map sending a normalized 3-cochain to the residuals of
/// all relations (on its flipped data) and of the regularity condition.
/// Each row is scaled so it reads as a congruence modulo `N`.
fn cocycle_constraints(m: &Bimodule, basis: &Basis) -> Howell {
    let ring = m.ring();
    let n = ring.order();
    let (dim, k, modulus) = (basis.dim(), basis.rank(), basis.modulus());
    let acts = ActionMatrices::new(m);
    let factors = m.factors().to_vec();
    let slot = |c: Component| Cochain3::COMPONENTS.iter().position(|&d| d == c).unwrap();
    let mut span = Howell::new(dim, modulus);
    let mut terms = Vec::new();
    let mut block = vec![vec![0u64; dim]; k];
    for_each_instance(ring, true, |rel, t| {
        terms.clear();
        relation_terms(ring, rel, t, &mut terms);
        let mut touched = false;
        for term in &terms {
            let flat = flat_index(n, &term.args[..term.comp.arity()]);
            let Some(p) = basis.position_of(slot(term.comp), flat) else { continue };
            touched = true;
            // the relations are stated for Ann-structure data, which carries -lambda
            let negate = (term.sign < 0) != (term.comp == Component::Lambda);
            let e = acts.get(term.left, term.right);
            for (i, row) in block.iter_mut().enumerate() {
                for j in 0..k {
                    let c = e[i][j] % modulus;
                    let cell = &mut row[p * k + j];
                    *cell = if negate { (*cell + modulus - c) % modulus } else { (*cell + c) % modulus };
                }
            }
        }
        if touched {
            for (i, row) in block.iter_mut().enumerate() {
                let scale = modulus / factors[i];
                if row.iter().any(|&v| v % factors[i] != 0) {
                    span.insert(row.iter().map(|&v| (v % factors[i]) * scale % modulus).collect());
                }
                row.iter_mut().for_each(|v| *v = 0);
            }
        }
        true
    });
    span
}

/// Generators of `Z^level` inside the lifted cochain coordinates.
fn cocycle_rows(m: &Bimodule, level: u8, basis: &Basis) -> Vec<Vec<u64>> {
    let modulus = basis.modulus();
    let mut rows = match level {
        1 => {
            let b2 = Basis::new::<Cochain2>(m);
            let a = map_matrix(m, basis, &b2, |c: &Cochain1| delta1(m, c));
            kernel_with_moduli(&a, &b2.moduli(), modulus)
        }
        2 => {
            let b3 = Basis::new::<Cochain3>(m);
            let a = map_matrix(m, basis, &b3, |c: &Cochain2| delta2(m, c));
            kernel_with_moduli(&a, &b3.moduli(), modulus)
        }
        _ => {
            let span = cocycle_constraints(m, basis);
            let rows = span.rows();
            kernel(&Matrix::from_rows(basis.dim(), &rows), modulus)
        }
    };
    rows.extend(basis.lattice_rows());
    rows
}

/// Generators of `B^level` (images of the unit cochains one level down).
fn coboundary_rows(m: &Bimodule, level: u8, basis: &Basis) -> Vec<Vec<u64>> {
    let mut rows = match level {
        1 => Vec::new(),
        2 => {
            let b1 = Basis::new::<Cochain1>(m);
            columns(&map_matrix(m, &b1, basis, |c: &Cochain1| delta1(m, c)))
        }
        _ => {
            let b2 = Basis::new::<Cochain2>(m);
            columns(&map_matrix(m, &b2, basis, |c: &Cochain2| delta2(m, c)))
        }
    };
    rows.extend(basis.lattice_rows());
    rows
}

/// A subgroup of a normalized cochain group, with its inclusion.
#[derive(Clone, Debug)]
pub struct CochainSubgroup {
    pub level: u8,
    pub group: FiniteAbelianGroup,
    /// one cochain per invariant factor
    pub generators: Vec<AnyCochain>,
    /// into the cochain group, in the coordinates of [`Basis::group`]
    pub embedding: GroupHom,
}

fn subgroup(m: &Bimodule, level: u8, basis: &Basis, rows: &[Vec<u64>]) -> Result<CochainSubgroup> {
    let sq = Subquotient::new(basis.dim(), basis.modulus(), rows, &basis.lattice_rows());
    let group = FiniteAbelianGroup::new(sq.factors().to_vec())?;
    let images: Vec<Vec<u64>> = sq.generators().iter().map(|g| basis.to_group_coords(g)).collect();
    let embedding = GroupHom::new(group.clone(), basis.group(), &images)?;
    let generators = sq.generators().iter().map(|g| vector_to_cochain(m, basis, level, g)).collect();
    Ok(CochainSubgroup { level, group, generators, embedding })
}

/// `Z^level` for level 1, 2 or 3.
pub fn cocycle_group(level: u8, m: &Bimodule, guard: &SizeGuard) -> Result<CochainSubgroup> {
    let basis = level_basis(m, level)?;
    guard_levels(m, guard, &[level])?;
    subgroup(m, level, &basis, &cocycle_rows(m, level, &basis))
}

/// `B^level` for level 2 or 3 (and the zero group at level 1).
pub fn coboundary_group(level: u8, m: &Bimodule, guard: &SizeGuard) -> Result<CochainSubgroup> {
    let basis = level_basis(m, level)?;
    guard_levels(m, guard, &[level, level.saturating_sub(1).max(1)])?;
    subgroup(m, level, &basis, &coboundary_rows(m, level, &basis))
}

/// `Z^level / B^level` with lexicographically least representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    level: u8,
    module: Bimodule,
    basis: Basis,
    quotient: Subquotient,
    group: FiniteAbelianGroup,
    cocycle_order: u128,
    coboundary_order: u128,
}

impl CohomologyGroup {
    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn cocycle_order(&self) -> u128 {
        self.cocycle_order
    }

    pub fn coboundary_order(&self) -> u128 {
        self.coboundary_order
    }

    /// The lexicographically least cocycle in the class with these coordinates.
    pub fn representative(&self, class: &[u64]) -> AnyCochain {
        let v = self.quotient.representative(class);
        vector_to_cochain(&self.module, &self.basis, self.level, &v)
    }

    /// Every class with its representative, in the group's element order.
    pub fn representatives(&self) -> Vec<(Vec<u64>, AnyCochain)> {
        self.group.elements().map(|c| (c.clone(), self.representative(&c))).collect()
    }

    /// Class of a cochain; `None` if it is not a cocycle of this level.
    pub fn class_of(&self, c: &AnyCochain) -> Option<Vec<u64>> {
        if c.level() != self.level {
            return None;
        }
        self.quotient.coordinates(&cochain_to_vector(&self.module, &self.basis, c))
    }
}

pub fn cohomology_group(level: u8, m: &Bimodule, guard: &SizeGuard) -> Result<CohomologyGroup> {
    if !(1..=3).contains(&level) {
        return invalid(format!("cohomology level {level} is not supported"));
    }
    let basis = level_basis(m, level)?;
    guard_levels(m, guard, &[level, level.saturating_sub(1).max(1)])?;
    let (dim, modulus) = (basis.dim(), basis.modulus());
    let z = cocycle_rows(m, level, &basis);
    let b = coboundary_rows(m, level, &basis);
    let quotient = Subquotient::new(dim, modulus, &z, &b);
    let group = FiniteAbelianGroup::new(quotient.factors().to_vec())?;
    let lattice = basis.lattice_rows();
    let cocycle_order = Subquotient::new(dim, modulus, &z, &lattice).order();
    let coboundary_order = Subquotient::new(dim, modulus, &b, &lattice).order();
    Ok(CohomologyGroup { level, module: m.clone(), basis, quotient, group, cocycle_order, coboundary_order })
}

/// `Z^1`, which is also the first cohomology of the normalized complex.
pub fn z1_group(m: &Bimodule, guard: &SizeGuard) -> Result<CohomologyGroup> {
    cohomology_group(1, m, guard)
}

/// Solves `delta2(g) = target` for normalized 2-cochains `g`.
#[derive(Clone, Debug)]
pub struct CoboundarySolver {
    module: Bimodule,
    b2: Basis,
    b3: Basis,
    solver: Solver,
    kernel: Howell,
}

impl CoboundarySolver {
    pub fn new(m: &Bimodule, guard: &SizeGuard) -> Result<Self> {
        guard_levels(m, guard, &[2, 3])?;
        let b2 = Basis::new::<Cochain2>(m);
        let b3 = Basis::new::<Cochain3>(m);
        let modulus = b2.modulus();
        let a = map_matrix(m, &b2, &b3, |c: &Cochain2| delta2(m, c));
        let scaled = crate::algebra::zmod::scale_rows(&a, &b3.moduli(), modulus);
        let solver = Solver::new(&scaled, modulus);
        let mut ker = kernel_with_moduli(&a, &b3.moduli(), modulus);
        ker.extend(b2.lattice_rows());
        let kernel = Howell::from_rows(b2.dim(), modulus, ker);
        Ok(CoboundarySolver { module: m.clone(), b2, b3, solver, kernel })
    }

    /// The lexicographically least `g` with `delta2(g) = target`, if any.
    pub fn solve(&self, target: &Cochain3) -> Option<Cochain2> {
        let m = &self.module;
        if !target.is_normalized(m.ring()) {
            return None;
        }
        let modulus = self.b3.modulus();
        let rhs: Vec<u64> = self
            .b3
            .to_vector(m, target)
            .iter()
            .zip(self.b3.moduli())
            .map(|(&v, e)| v * (modulus / e) % modulus)
            .collect();
        let x = self.solver.solve(&rhs)?;
        let g: Cochain2 = self.b2.from_vector(m, &self.kernel.reduce(&x));
        debug_assert_eq!(&delta2(m, &g), target);
        Some(g)
    }
}

/// Whether two 3-cocycles are cohomologous; returns the least `g` with
/// `f - f2 = delta2(g)` when they are.
pub fn same_class(m: &Bimodule, f: &Cochain3, f2: &Cochain3, guard: &SizeGuard) -> Result<Option<Cochain2>> {
    for (name, c) in [("first", f), ("second", f2)] {
        c.check_shape(m)?;
        if let Some(v) = is_cocycle3(m, c).violations.first() {
            return Err(Error::NotCocycle(format!(
                "3-cocycle: {name} input fails relation {} at {:?}",
                v.relation, v.tuple
            )));
        }
    }
    Ok(CoboundarySolver::new(m, guard)?.solve(&f.sub(m, f2)))
}

/// One regular Ann-structure per element of `H^3`, in the group's element order.
pub fn classify_ann_structures(m: &Bimodule, guard: &SizeGuard) -> Result<Vec<AnnStructure>> {
    let h = cohomology_group(3, m, guard)?;
    h.representatives()
        .into_iter()
        .map(|(_, c)| AnnStructure::from_cocycle(m, c.as_three().expect("level 3")))
        .collect()
}
