//! Shared fixtures for the integration tests and the acceptance harness.
#![allow(dead_code)]

use anncat::algebra::{smith_normal_form, Bimodule, FiniteRing, FiniteRng, Matrix};
use anncat::cochain::{
    delta1, delta2, is_cocycle3, stream_cochains, Basis, Cochain, Cochain1, Cochain2, Cochain3,
};
use anncat::ann_category::CoherenceChecker;
use anncat::cochain::{flip_lambda, is_ann_structure};
use anncat::cohomology::cohomology_group;
use anncat::extension::{
    bicenter, enumerate_bimultiplications, enumerate_regular_lifts, obstruction_family, BimultRing, FamilyVariant,
    RegularHomTheta,
};
use anncat::guard::SizeGuard;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashSet};

/// The `(R, M)` pairs most suites run over.
pub fn corpus() -> Vec<(&'static str, Bimodule)> {
    let z = |n| FiniteRing::cyclic(n).unwrap();
    let dual = FiniteRing::dual_numbers(2).unwrap();
    vec![
        ("Z2", Bimodule::regular(&z(2))),
        ("Z3", Bimodule::regular(&z(3))),
        ("Z4", Bimodule::regular(&z(4))),
        ("Z2[e]", Bimodule::regular(&dual)),
        ("Z2 x Z2", Bimodule::regular(&FiniteRing::product(&z(2), &z(2)))),
        ("Z4 on Z2", Bimodule::regular(&z(2)).pullback(&z(4), &[0, 1, 0, 1]).unwrap()),
        ("Z3 trivial", Bimodule::trivial(&z(3))),
        ("Z5", Bimodule::regular(&z(5))),
    ]
}

/// `|H^level|` by listing every cocycle and every coboundary, when both
/// cochain groups have at most `limit` elements.
pub fn brute_force_order(level: u8, m: &Bimodule, limit: u128) -> Option<u128> {
    let (z, b): (u128, usize) = match level {
        1 => {
            let z = stream_cochains::<Cochain1>(m, limit).ok()?.filter(|a| delta1(m, a).is_zero()).count();
            (z as u128, 1)
        }
        2 => {
            let cochains: Vec<Cochain2> = stream_cochains(m, limit).ok()?.collect();
            let z = cochains.iter().filter(|g| delta2(m, g).is_zero()).count();
            let b: HashSet<Cochain2> = stream_cochains::<Cochain1>(m, limit).ok()?.map(|a| delta1(m, &a)).collect();
            assert!(b.iter().all(|g| delta2(m, g).is_zero()), "a coboundary is not a cocycle");
            (z as u128, b.len())
        }
        3 => {
            let seconds: Vec<Cochain2> = stream_cochains(m, limit).ok()?.collect();
            let z = stream_cochains::<Cochain3>(m, limit).ok()?.filter(|f| is_cocycle3(m, f).passed()).count();
            let b: HashSet<Cochain3> = seconds.iter().map(|g| delta2(m, g)).collect();
            assert!(b.iter().all(|f| is_cocycle3(m, f).passed()), "a coboundary is not a cocycle");
            (z as u128, b.len())
        }
        _ => return None,
    };
    assert_eq!(z % b as u128, 0, "coboundaries do not divide cocycles");
    Some(z / b as u128)
}

/// Rank over `F_p` of the given columns.
pub fn rank_mod_p(columns: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = columns.iter().map(|c| c.iter().map(|&x| x % p).collect()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = *v * scale % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let k = row[col];
                for (v, &q) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p * p - k * q % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(|Z^3|, |B^3|)` from ranks over `F_p`, for modules that are `F_p`-vector
/// spaces. The cocycle map sends a cochain to its residuals at every relation
/// instance; both maps are evaluated on unit cochains only.
pub fn fp_orders(m: &Bimodule) -> (u128, u128) {
    let p = m.factors()[0];
    assert!(m.factors().iter().all(|&d| d == p) && (2..p).all(|q| !p.is_multiple_of(q)), "module must be an F_p-space");
    let b3 = Basis::new::<Cochain3>(m);
    // (relation, tuple, module coordinate)
    type Key = (u8, Vec<usize>, usize);
    let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
    let residuals: Vec<Vec<(Key, u64)>> = (0..b3.dim())
        .map(|j| {
            let e: Cochain3 = b3.unit(m, j);
            is_cocycle3(m, &e)
                .violations
                .iter()
                .flat_map(|v| {
                    m.coords(v.residual).iter().enumerate().map(|(i, &x)| ((v.relation, v.tuple.clone(), i), x)).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    for r in residuals.iter().flatten() {
        let next = keys.len();
        keys.entry(r.0.clone()).or_insert(next);
    }
    let columns: Vec<Vec<u64>> = residuals
        .iter()
        .map(|col| {
            let mut v = vec![0; keys.len()];
            for (k, x) in col {
                v[keys[k]] = *x;
            }
            v
        })
        .collect();
    let z = (p as u128).pow((b3.dim() - rank_mod_p(&columns, p)) as u32);
    let b2 = Basis::new::<Cochain2>(m);
    let images: Vec<Vec<u64>> =
        (0..b2.dim()).map(|j| b3.to_vector(m, &delta2(m, &b2.unit::<Cochain2>(m, j)))).collect();
    let b = (p as u128).pow(rank_mod_p(&images, p) as u32);
    (z, b)
}

/// Hochschild condition on the `alpha` table alone: normalized, additive in
/// each argument, and `x a(y,z,w) - a(xy,z,w) + a(x,yz,w) - a(x,y,zw) + a(x,y,z) w = 0`.
pub fn hochschild_cocycle(m: &Bimodule, f: &Cochain3) -> bool {
    let r = m.ring();
    let n = r.order();
    let a = |x, y, z| f.alpha(x, y, z);
    let trivial = |x: usize| r.is_trivial_arg(x);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if (trivial(x) || trivial(y) || trivial(z)) && a(x, y, z) != 0 {
                    return false;
                }
                for w in 0..n {
                    let additive = a(r.add(x, w), y, z) == m.add(a(x, y, z), a(w, y, z))
                        && a(x, r.add(y, w), z) == m.add(a(x, y, z), a(x, w, z))
                        && a(x, y, r.add(z, w)) == m.add(a(x, y, z), a(x, y, w));
                    if !additive {
                        return false;
                    }
                    let plus = m.add(m.left(x, a(y, z, w)), m.add(a(x, r.mul(y, z), w), m.right(a(x, y, z), w)));
                    let minus = m.add(a(r.mul(x, y), z, w), a(x, y, r.mul(z, w)));
                    if plus != minus {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The rings `A` of the extension test matrix.
pub fn extension_bases() -> Vec<(&'static str, FiniteRng)> {
    vec![
        ("null Z2", FiniteRng::null_cyclic(2)),
        ("null Z3", FiniteRng::null_cyclic(3)),
        ("2Z8", FiniteRng::multiples_in_cyclic(2, 8).unwrap()),
    ]
}

pub struct Instance {
    pub name: String,
    pub ma: BimultRing,
    pub r: FiniteRing,
    pub lifts: Vec<RegularHomTheta>,
}

/// Every pair of the matrix `A x {Z2, Z3}` with its regular lifts.
pub fn extension_matrix() -> Vec<Instance> {
    let guard = SizeGuard::default();
    let mut out = Vec::new();
    for (name, a) in extension_bases() {
        let ma = enumerate_bimultiplications(&a, &guard).unwrap();
        for n in [2, 3] {
            let r = FiniteRing::cyclic(n).unwrap();
            let lifts = enumerate_regular_lifts(&ma, &r, &guard).unwrap();
            out.push(Instance { name: format!("{name} by Z{n}"), ma: ma.clone(), r, lifts });
        }
    }
    out
}

/// All factor sets differing from `(f, g)` by normalized bicenter-valued tables.
pub fn admissible_factor_sets(inst: &Instance, f: &[usize], g: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let a = inst.ma.base();
    let r = &inst.r;
    let n = r.order();
    let c = anncat::extension::bicenter(a).elements;
    let mut slots: Vec<(bool, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != 0 && y != 0 {
                slots.push((true, x * n + y));
            }
            if !r.is_trivial_arg(x) && !r.is_trivial_arg(y) {
                slots.push((false, x * n + y));
            }
        }
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots.len()];
    loop {
        let (mut f2, mut g2) = (f.to_vec(), g.to_vec());
        for (&(is_f, i), &d) in slots.iter().zip(&digits) {
            let t = if is_f { &mut f2 } else { &mut g2 };
            t[i] = a.add(t[i], c[d]);
        }
        out.push((f2, g2));
        let mut k = 0;
        loop {
            if k == digits.len() {
                return out;
            }
            digits[k] += 1;
            if digits[k] < c.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Exact determinant by fraction-free elimination.
pub fn det(a: &Matrix<BigInt>) -> BigInt {
    let n = a.nrows();
    let mut m = a.to_rows();
    let (mut negate, mut prev) = (false, BigInt::one());
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    if negate {
        -d
    } else {
        d
    }
}

/// Checks `U A V = D`, `|det U| = |det V| = 1`, `D` diagonal and nonnegative
/// with each entry dividing the next. Returns the first failure.
pub fn check_smith(a: &Matrix<i64>) -> Result<(), String> {
    let (u, d, v) = smith_normal_form(a);
    let wide = a.map(|&x| BigInt::from(x));
    if u.mul(&wide).mul(&v) != d {
        return Err(format!("U A V != D for {a:?}"));
    }
    for (name, t) in [("U", &u), ("V", &v)] {
        if det(t).magnitude() != &BigUint::one() {
            return Err(format!("{name} is not unimodular for {a:?}"));
        }
    }
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            if i != j && !d[(i, j)].is_zero() {
                return Err(format!("D is not diagonal for {a:?}"));
            }
        }
    }
    let diag: Vec<&BigInt> = (0..d.nrows().min(d.ncols())).map(|i| &d[(i, i)]).collect();
    if diag.iter().any(|x| x.is_negative()) {
        return Err(format!("negative invariant factor for {a:?}"));
    }
    for w in diag.windows(2) {
        let divides = if w[0].is_zero() { w[1].is_zero() } else { (w[1] % w[0]).is_zero() };
        if !divides {
            return Err(format!("{} does not divide {} for {a:?}", w[0], w[1]));
        }
    }
    Ok(())
}

/// A random `rows x cols` matrix with entries in `[-bound, bound]`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix<i64> {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    Matrix::from_rows(cols, &data)
}

/// A uniformly random normalized cochain.
pub fn random_cochain<C: Cochain>(m: &Bimodule, rng: &mut impl Rng) -> C {
    let b = Basis::new::<C>(m);
    let v: Vec<u64> = b.moduli().iter().map(|&d| rng.gen_range(0..d)).collect();
    b.from_vector(m, &v)
}

/// Whether the relation check and the diagram evaluator agree on `f`.
pub fn oracle_agrees(checker: &CoherenceChecker, m: &Bimodule, f: &Cochain3) -> bool {
    let relations = is_cocycle3(m, f);
    let diagrams = checker.check(m, &flip_lambda(m, f), true);
    relations.passed() == diagrams.is_empty()
}

/// Random cochains, random cocycles, and cocycles with one value changed,
/// in equal shares. Returns `(cocycles seen, disagreements)`.
pub fn oracle_sample(m: &Bimodule, samples: usize, seed: u64) -> (usize, usize) {
    let checker = CoherenceChecker::new(m.ring());
    let h3 = cohomology_group(3, m, &SizeGuard::default()).unwrap();
    let reps: Vec<Cochain3> = h3.representatives().into_iter().map(|(_, c)| c.as_three().unwrap().clone()).collect();
    let basis = Basis::new::<Cochain3>(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut cocycles, mut disagreements) = (0, 0);
    for i in 0..samples {
        let f = match i % 3 {
            0 => random_cochain::<Cochain3>(m, &mut rng),
            _ => {
                let g: Cochain2 = random_cochain(m, &mut rng);
                let mut f = delta2(m, &g).add(m, &reps[rng.gen_range(0..reps.len())]);
                if i % 3 == 2 {
                    let (slot, idx) = basis.positions()[rng.gen_range(0..basis.position_count())];
                    f.table_mut(slot)[idx] = rng.gen_range(0..m.order());
                }
                f
            }
        };
        cocycles += is_cocycle3(m, &f).passed() as usize;
        disagreements += !oracle_agrees(&checker, m, &f) as usize;
    }
    (cocycles, disagreements)
}

/// Whether the uncorrected family, read in the bicenter, is an Ann-structure.
pub fn literal_family_passes(inst: &Instance, theta: &RegularHomTheta, module: &Bimodule, f: &[usize], g: &[usize]) -> bool {
    let lit = obstruction_family(&inst.ma, &inst.r, theta, f, g, FamilyVariant::Literal);
    let c = bicenter(inst.ma.base());
    let local: Option<Vec<Vec<usize>>> =
        (0..5).map(|slot| lit.table(slot).iter().map(|&v| c.local(v)).collect()).collect();
    local.is_some_and(|t| {
        let mut fam = Cochain3::zero(inst.r.order());
        for (slot, col) in t.into_iter().enumerate() {
            fam.table_mut(slot).copy_from_slice(&col);
        }
        is_ann_structure(module, &fam).passed()
    })
}

/// `0 -> A -> S -> R -> 0`: the inclusion is an injective map of rngs, the
/// projection a surjective ring map, and the image of one is the kernel of
/// the other.
pub fn is_exact(a: &FiniteRng, s: &FiniteRing, r: &FiniteRing, inclusion: &[usize], projection: &[usize]) -> bool {
    let injective = inclusion.iter().collect::<HashSet<_>>().len() == a.order();
    let included = a.elements().all(|x| {
        a.elements().all(|y| {
            inclusion[a.add(x, y)] == s.add(inclusion[x], inclusion[y])
                && inclusion[a.mul(x, y)] == s.mul(inclusion[x], inclusion[y])
        })
    });
    let projected = s.elements().all(|x| {
        s.elements().all(|y| {
            projection[s.add(x, y)] == r.add(projection[x], projection[y])
                && projection[s.mul(x, y)] == r.mul(projection[x], projection[y])
        })
    }) && projection[s.unit()] == r.unit();
    let surjective = projection.iter().collect::<HashSet<_>>().len() == r.order();
    let image: HashSet<usize> = inclusion.iter().copied().collect();
    let kernel: HashSet<usize> = s.elements().filter(|&x| projection[x] == 0).collect();
    injective && included && projected && surjective && image == kernel
}
