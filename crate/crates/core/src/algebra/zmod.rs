//! Linear algebra over `Z/N`.
//!
//! Every finite abelian group `G = Z_{d_1} x ... x Z_{d_k}` with exponent
//! dividing `N` is handled as `(Z/N)^k` modulo the lattice spanned by
//! `d_i e_i`. Subgroups are row spans, kept in Howell form so that coset
//! representatives can be made lexicographically least.

use super::matrix::Matrix;
use super::snf::{gcd, smith, PivotRing, Track, Zn};

/// Row span over `Z/N` in Howell form, built incrementally.
#[derive(Clone, Debug)]
pub struct Howell {
    zn: Zn,
    // pivot row per column, if any
    rows: Vec<Option<Vec<u64>>>,
}

impl Howell {
    pub fn new(ncols: usize, modulus: u64) -> Self {
        Howell { zn: Zn::new(modulus), rows: vec![None; ncols] }
    }

    pub fn from_rows(ncols: usize, modulus: u64, rows: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut h = Howell::new(ncols, modulus);
        for r in rows {
            h.insert(r);
        }
        h
    }

    pub fn ncols(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.zn.modulus()
    }

    pub fn insert(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.rows.len());
        let zn = self.zn;
        let n = zn.modulus();
        let mut work = vec![row];
        while let Some(mut r) = work.pop() {
            for x in r.iter_mut() {
                *x %= n;
            }
            let mut c = 0;
            loop {
                while c < r.len() && r[c] == 0 {
                    c += 1;
                }
                if c == r.len() {
                    break;
                }
                match self.rows[c].take() {
                    None => {
                        let (u, _) = zn.normalize(r[c]);
                        for x in r.iter_mut() {
                            *x = zn.mulm(u, *x);
                        }
                        let ann = n / r[c];
                        let a: Vec<u64> = r.iter().map(|&x| zn.mulm(ann, x)).collect();
                        if a.iter().any(|&x| x != 0) {
                            work.push(a);
                        }
                        self.rows[c] = Some(r);
                        break;
                    }
                    Some(b) => {
                        let (p, v) = (b[c], r[c]);
                        if v % p == 0 {
                            let q = v / p;
                            for j in c..r.len() {
                                r[j] = zn.subm(r[j], zn.mulm(q, b[j]));
                            }
                            self.rows[c] = Some(b);
                        } else {
                            let (g, s, t) = zn.gcdext(p, v).expect("modular gcd");
                            let (vg, pg) = (v / g, p / g);
                            let mut fresh = vec![0; r.len()];
                            let mut rest = vec![0; r.len()];
                            for j in c..r.len() {
                                fresh[j] = zn.addm(zn.mulm(s, b[j]), zn.mulm(t, r[j]));
                                rest[j] = zn.subm(zn.mulm(vg, b[j]), zn.mulm(pg, r[j]));
                            }
                            debug_assert_eq!(fresh[c], g % n);
                            let ann = n / g;
                            let a: Vec<u64> = fresh.iter().map(|&x| zn.mulm(ann, x)).collect();
                            if a.iter().any(|&x| x != 0) {
                                work.push(a);
                            }
                            self.rows[c] = Some(fresh);
                            r = rest;
                        }
                        c += 1;
                    }
                }
            }
        }
    }

    /// Pivot rows in column order.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.rows.iter().flatten().cloned().collect()
    }

    /// The lexicographically least element of the coset `v + span`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let zn = self.zn;
        let mut v: Vec<u64> = v.iter().map(|&x| x % zn.modulus()).collect();
        for (c, row) in self.rows.iter().enumerate() {
            if let Some(b) = row {
                let q = v[c] / b[c];
                if q != 0 {
                    for j in c..v.len() {
                        v[j] = zn.subm(v[j], zn.mulm(q, b[j]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Number of elements of the span.
    pub fn order(&self) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|b| (self.zn.modulus() / b[c]) as u128))
            .product()
    }
}

pub fn mat_vec(zn: &Zn, a: &Matrix<u64>, x: &[u64]) -> Vec<u64> {
    (0..a.nrows())
        .map(|i| {
            a.row(i).iter().zip(x).fold(0, |acc, (&p, &q)| zn.addm(acc, zn.mulm(p, q)))
        })
        .collect()
}

/// Generators of `{x : a x = 0}` over `Z/N`.
pub fn kernel(a: &Matrix<u64>, modulus: u64) -> Vec<Vec<u64>> {
    let zn = Zn::new(modulus);
    let n = a.ncols();
    // The kernel only depends on the row span; compress tall matrices first.
    let a = if a.nrows() > n {
        let h = Howell::from_rows(n, modulus, a.to_rows());
        Matrix::from_rows(n, &h.rows())
    } else {
        a.clone()
    };
    let s = smith(&zn, a, Track { v: true, ..Track::NONE }).expect("modular arithmetic cannot overflow");
    let diag = s.diagonal();
    let v = s.v.unwrap();
    let mut gens = Vec::new();
    for j in 0..n {
        let d = diag.get(j).copied().unwrap_or(0);
        let mult = modulus / gcd(d, modulus);
        if mult.is_multiple_of(modulus) {
            continue;
        }
        let g: Vec<u64> = v.col(j).iter().map(|&x| zn.mulm(x, mult)).collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    gens
}

/// Kernel generators for a map into `Z_{e_1} x ...`; row `i` of `a` is read modulo `row_moduli[i]`.
pub fn kernel_with_moduli(a: &Matrix<u64>, row_moduli: &[u64], modulus: u64) -> Vec<Vec<u64>> {
    kernel(&scale_rows(a, row_moduli, modulus), modulus)
}

/// Multiply row `i` by `N / e_i`, turning congruences mod `e_i` into congruences mod `N`.
pub fn scale_rows(a: &Matrix<u64>, row_moduli: &[u64], modulus: u64) -> Matrix<u64> {
    let zn = Zn::new(modulus);
    let mut out = a.clone();
    for (i, &e) in row_moduli.iter().enumerate() {
        debug_assert!(modulus.is_multiple_of(e));
        let f = modulus / e;
        for j in 0..a.ncols() {
            out[(i, j)] = zn.mulm(a[(i, j)] % e, f);
        }
    }
    out
}

/// Solver for `a x = b` over `Z/N`, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct Solver {
    zn: Zn,
    u: Matrix<u64>,
    v: Matrix<u64>,
    diag: Vec<u64>,
    ncols: usize,
}

impl Solver {
    pub fn new(a: &Matrix<u64>, modulus: u64) -> Self {
        let zn = Zn::new(modulus);
        let s = smith(&zn, a.clone(), Track { u: true, v: true, ..Track::NONE })
            .expect("modular arithmetic cannot overflow");
        let diag = s.diagonal();
        Solver { zn, u: s.u.unwrap(), v: s.v.unwrap(), diag, ncols: a.ncols() }
    }

    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let zn = &self.zn;
        let c = mat_vec(zn, &self.u, b);
        let mut y = vec![0u64; self.ncols];
        for (i, &ci) in c.iter().enumerate() {
            let d = self.diag.get(i).copied().unwrap_or(0);
            if d == 0 {
                if ci != 0 {
                    return None;
                }
                continue;
            }
            if !zn.divides(d, ci) {
                return None;
            }
            y[i] = zn.div_exact(ci, d).ok()?;
        }
        Some(mat_vec(zn, &self.v, &y))
    }
}

/// The quotient `L1 / L2` of two subgroups `L2 <= L1 <= (Z/N)^n`, in
/// invariant-factor form with a generator per factor.
#[derive(Clone, Debug)]
pub struct Subquotient {
    zn: Zn,
    factors: Vec<u64>,
    generators: Vec<Vec<u64>>,
    denominator: Howell,
    // coordinates on (Z/N)^n / L2
    quot_u: Matrix<u64>,
    quot_moduli: Vec<u64>,
    coords: Solver,
}

impl Subquotient {
    /// `l2` must lie inside the span of `l1`.
    pub fn new(dim: usize, modulus: u64, l1: &[Vec<u64>], l2: &[Vec<u64>]) -> Self {
        let zn = Zn::new(modulus);
        let denominator = Howell::from_rows(dim, modulus, l2.iter().cloned());
        let h2 = denominator.rows();

        // x -> (U x)_i mod t_i identifies (Z/N)^dim / L2 with a sum of cyclic groups.
        let g2 = Matrix::from_rows(dim, &h2).transpose();
        let g2 = if h2.is_empty() { Matrix::filled(dim, 0, 0) } else { g2 };
        let s2 = smith(&zn, g2, Track { u: true, ..Track::NONE }).unwrap();
        let diag2 = s2.diagonal();
        let quot_moduli: Vec<u64> =
            (0..dim).map(|i| gcd(diag2.get(i).copied().unwrap_or(0), modulus)).collect();
        let quot_u = s2.u.unwrap();
        let phi = |x: &[u64]| -> Vec<u64> {
            mat_vec(&zn, &quot_u, x).iter().zip(&quot_moduli).map(|(&y, &t)| y % t).collect()
        };

        // Relations among the images of the l1 generators.
        let p = l1.len();
        let mut big_phi = Matrix::filled(dim, p, 0u64);
        for (j, g) in l1.iter().enumerate() {
            for (i, y) in phi(g).into_iter().enumerate() {
                big_phi[(i, j)] = y;
            }
        }
        let rels = kernel_with_moduli(&big_phi, &quot_moduli, modulus);
        let kmat = if rels.is_empty() {
            Matrix::filled(p, 0, 0)
        } else {
            Matrix::from_rows(p, &rels).transpose()
        };
        let sk = smith(&zn, kmat, Track { u_inv: true, ..Track::NONE }).unwrap();
        let diagk = sk.diagonal();
        let uk_inv = sk.u_inv.unwrap();

        let mut factors = Vec::new();
        let mut generators = Vec::new();
        for i in 0..p {
            let c = gcd(diagk.get(i).copied().unwrap_or(0), modulus);
            if c == 1 {
                continue;
            }
            let coeffs = uk_inv.col(i);
            let mut z = vec![0u64; dim];
            for (j, g) in l1.iter().enumerate() {
                if coeffs[j] != 0 {
                    for k in 0..dim {
                        z[k] = zn.addm(z[k], zn.mulm(coeffs[j], g[k]));
                    }
                }
            }
            factors.push(c);
            generators.push(denominator.reduce(&z));
        }

        let k = generators.len();
        let mut gen_phi = Matrix::filled(dim, k, 0u64);
        for (j, z) in generators.iter().enumerate() {
            for (i, y) in phi(z).into_iter().enumerate() {
                gen_phi[(i, j)] = y;
            }
        }
        let coords = Solver::new(&scale_rows(&gen_phi, &quot_moduli, modulus), modulus);
        Subquotient { zn, factors, generators, denominator, quot_u, quot_moduli, coords }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn denominator(&self) -> &Howell {
        &self.denominator
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&f| f as u128).product()
    }

    /// Coordinates of the class of `x`; `None` when `x` is outside the numerator.
    pub fn coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        let m = self.zn.modulus();
        let phi: Vec<u64> = mat_vec(&self.zn, &self.quot_u, x)
            .iter()
            .zip(&self.quot_moduli)
            .map(|(&y, &t)| (y % t) * (m / t) % m)
            .collect();
        let y = self.coords.solve(&phi)?;
        let c: Vec<u64> = y.iter().zip(&self.factors).map(|(&v, &f)| v % f).collect();
        // The solver works modulo the scaled system; confirm membership exactly.
        let back = self.representative(&c);
        let diff: Vec<u64> = x.iter().zip(&back).map(|(&a, &b)| self.zn.subm(a, b)).collect();
        self.denominator.contains(&diff).then_some(c)
    }

    /// Lexicographically least lift of the class with the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> Vec<u64> {
        let dim = self.denominator.ncols();
        let mut z = vec![0u64; dim];
        for (c, g) in coords.iter().zip(&self.generators) {
            if *c != 0 {
                for k in 0..dim {
                    z[k] = self.zn.addm(z[k], self.zn.mulm(*c, g[k]));
                }
            }
        }
        self.denominator.reduce(&z)
    }
}
