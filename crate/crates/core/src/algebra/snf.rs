//! Smith normal form over a principal ideal ring.
//!
//! One elimination routine serves two rings: the integers in arbitrary
//! precision, and `Z/N` with residues in `[0, N)`. The `Z/N` variant is what
//! the cohomology pipeline uses, since every cochain group there is killed by
//! the exponent of the coefficient module.

use super::matrix::Matrix;
use crate::error::Result;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub trait PivotRing {
    type Elem: Clone + Eq + Debug;
    /// Pivot quality; smaller generates a larger ideal.
    type Size: Ord;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: Self::Elem) -> Result<Self::Elem>;
    /// Pivot quality of a nonzero element.
    fn size(&self, a: &Self::Elem) -> Self::Size;
    /// Whether `a` divides `b`; `a` is nonzero.
    fn divides(&self, a: Self::Elem, b: Self::Elem) -> bool;
    /// Some `q` with `a * q = b`, assuming `divides(a, b)`.
    fn div_exact(&self, b: Self::Elem, a: Self::Elem) -> Result<Self::Elem>;
    /// `(g, s, t)` with `s*a + t*b = g` and `a/g`, `b/g` defined.
    fn gcdext(&self, a: Self::Elem, b: Self::Elem) -> Result<(Self::Elem, Self::Elem, Self::Elem)>;
    /// A unit `u` and its inverse such that `u * a` is the canonical associate of `a`.
    fn normalize(&self, a: Self::Elem) -> (Self::Elem, Self::Elem);
    /// A `q` making `b - q a` smaller than `a`, for Euclidean rings. Without
    /// one, elimination falls back to extended-gcd transforms.
    fn nearest_quotient(&self, _b: Self::Elem, _a: Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }
}

/// The integers, in arbitrary precision.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl PivotRing for Integers {
    type Elem = BigInt;
    type Size = BigUint;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: BigInt, b: BigInt) -> Result<BigInt> {
        Ok(a + b)
    }
    fn mul(&self, a: BigInt, b: BigInt) -> Result<BigInt> {
        Ok(a * b)
    }
    fn neg(&self, a: BigInt) -> Result<BigInt> {
        Ok(-a)
    }
    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn divides(&self, a: BigInt, b: BigInt) -> bool {
        (b % a).is_zero()
    }
    fn div_exact(&self, b: BigInt, a: BigInt) -> Result<BigInt> {
        Ok(b / a)
    }
    fn gcdext(&self, a: BigInt, b: BigInt) -> Result<(BigInt, BigInt, BigInt)> {
        let e = a.extended_gcd(&b);
        Ok(if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) })
    }
    fn normalize(&self, a: BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }
    fn nearest_quotient(&self, b: BigInt, a: BigInt) -> Option<BigInt> {
        // round(b / a), so the remainder is at most |a| / 2 in size
        let (q, r) = b.div_mod_floor(&a);
        let r2: BigInt = r * 2;
        Some(if r2.magnitude() > a.magnitude() { q + a.signum() } else { q })
    }
}

/// `(g, s, t)` with `s*a + t*b = g >= 0`.
fn gcdext_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Residues modulo `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zn {
    n: u64,
}

impl Zn {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        Zn { n }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.n as i128) as u64
    }

    #[inline]
    pub fn addm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.n as u128) as u64
    }

    #[inline]
    pub fn subm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.n as u128 - b as u128 % self.n as u128) % self.n as u128) as u64
    }

    #[inline]
    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.n as u128) as u64
    }

    pub fn negm(&self, a: u64) -> u64 {
        self.subm(0, a)
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
        if m == 1 {
            return Some(0);
        }
        let (g, s, _) = gcdext_i128((a % m) as i128, m as i128);
        (g == 1).then(|| s.rem_euclid(m as i128) as u64)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl PivotRing for Zn {
    type Elem = u64;
    type Size = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn add(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.addm(a, b))
    }
    fn mul(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mulm(a, b))
    }
    fn neg(&self, a: u64) -> Result<u64> {
        Ok(self.negm(a))
    }
    fn size(&self, a: &u64) -> u64 {
        gcd(*a, self.n)
    }
    fn divides(&self, a: u64, b: u64) -> bool {
        b.is_multiple_of(gcd(a, self.n))
    }
    fn div_exact(&self, b: u64, a: u64) -> Result<u64> {
        let g = gcd(a, self.n);
        let m = self.n / g;
        let inv = Zn::inverse_mod(a / g, m).expect("cofactor is a unit");
        Ok(((b / g) as u128 * inv as u128 % m as u128) as u64)
    }
    fn gcdext(&self, a: u64, b: u64) -> Result<(u64, u64, u64)> {
        let (g, s, t) = gcdext_i128(a as i128, b as i128);
        Ok((g as u64, self.reduce_i128(s), self.reduce_i128(t)))
    }
    fn normalize(&self, a: u64) -> (u64, u64) {
        if a == 0 || self.n == 1 {
            return (self.one(), self.one());
        }
        let g = gcd(a, self.n);
        let m = self.n / g;
        let u0 = Zn::inverse_mod(a / g, m).expect("cofactor is a unit");
        let mut u = u0;
        while gcd(u, self.n) != 1 {
            u += m;
        }
        let u = u % self.n;
        (u, Zn::inverse_mod(u, self.n).expect("unit"))
    }
}

/// Which transforms to record.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
}

/// `u * a * v = d` with `d` diagonal and `d[0] | d[1] | ...`.
#[derive(Clone, Debug)]
pub struct Smith<E> {
    pub d: Matrix<E>,
    pub u: Option<Matrix<E>>,
    pub u_inv: Option<Matrix<E>>,
    pub v: Option<Matrix<E>>,
    pub v_inv: Option<Matrix<E>>,
}

impl<E: Clone> Smith<E> {
    pub fn diagonal(&self) -> Vec<E> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Elim<'a, R: PivotRing> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    u: Option<Matrix<R::Elem>>,
    u_inv: Option<Matrix<R::Elem>>,
    v: Option<Matrix<R::Elem>>,
    v_inv: Option<Matrix<R::Elem>>,
}

fn identity<R: PivotRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = Matrix::filled(n, n, ring.zero());
    for i in 0..n {
        m[(i, i)] = ring.one();
    }
    m
}

fn combine<R: PivotRing>(ring: &R, p: &R::Elem, x: &R::Elem, q: &R::Elem, y: &R::Elem) -> Result<R::Elem> {
    ring.add(ring.mul(p.clone(), x.clone())?, ring.mul(q.clone(), y.clone())?)
}

// new_i = p*x_i + q*x_j, new_j = r*x_i + s*x_j along rows (or columns).
fn mix_rows<R: PivotRing>(ring: &R, m: &mut Matrix<R::Elem>, i: usize, j: usize, t: &[R::Elem; 4]) -> Result<()> {
    let [p, q, r, s] = t;
    for c in 0..m.ncols() {
        let ni = combine(ring, p, &m[(i, c)], q, &m[(j, c)])?;
        let nj = combine(ring, r, &m[(i, c)], s, &m[(j, c)])?;
        m[(i, c)] = ni;
        m[(j, c)] = nj;
    }
    Ok(())
}

fn mix_cols<R: PivotRing>(ring: &R, m: &mut Matrix<R::Elem>, i: usize, j: usize, t: &[R::Elem; 4]) -> Result<()> {
    let [p, q, r, s] = t;
    for row in 0..m.nrows() {
        let ni = combine(ring, p, &m[(row, i)], q, &m[(row, j)])?;
        let nj = combine(ring, r, &m[(row, i)], s, &m[(row, j)])?;
        m[(row, i)] = ni;
        m[(row, j)] = nj;
    }
    Ok(())
}

/// `[[p, q], [r, s]]` with determinant one maps to its inverse `[[s, -q], [-r, p]]`,
/// which acts on the other side in transposed position.
fn adjugate<R: PivotRing>(ring: &R, t: &[R::Elem; 4]) -> Result<[R::Elem; 4]> {
    let [p, q, r, s] = t.clone();
    Ok([s, ring.neg(r)?, ring.neg(q)?, p])
}

impl<'a, R: PivotRing> Elim<'a, R> {
    /// Row transform with determinant one: rows (i, j) <- [[p, q], [r, s]] (rows i, j).
    fn rows(&mut self, i: usize, j: usize, t: [R::Elem; 4]) -> Result<()> {
        let ring = self.ring;
        mix_rows(ring, &mut self.a, i, j, &t)?;
        if let Some(u) = self.u.as_mut() {
            mix_rows(ring, u, i, j, &t)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            mix_cols(ring, ui, i, j, &adjugate(ring, &t)?)?;
        }
        Ok(())
    }

    fn cols(&mut self, i: usize, j: usize, t: [R::Elem; 4]) -> Result<()> {
        let ring = self.ring;
        mix_cols(ring, &mut self.a, i, j, &t)?;
        if let Some(v) = self.v.as_mut() {
            mix_cols(ring, v, i, j, &t)?;
        }
        if let Some(vi) = self.v_inv.as_mut() {
            mix_rows(ring, vi, i, j, &adjugate(ring, &t)?)?;
        }
        Ok(())
    }

    /// Row `j` minus `q` times row `t`.
    fn sub_row(&mut self, t: usize, j: usize, q: R::Elem) -> Result<()> {
        let ring = self.ring;
        self.rows(t, j, [ring.one(), ring.zero(), ring.neg(q)?, ring.one()])
    }

    fn sub_col(&mut self, t: usize, j: usize, q: R::Elem) -> Result<()> {
        let ring = self.ring;
        self.cols(t, j, [ring.one(), ring.zero(), ring.neg(q)?, ring.one()])
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap_rows(i, j);
        }
    }

    fn scale_row(&mut self, i: usize, unit: R::Elem, unit_inv: R::Elem) -> Result<()> {
        let ring = self.ring;
        for c in 0..self.a.ncols() {
            self.a[(i, c)] = ring.mul(unit.clone(), self.a[(i, c)].clone())?;
        }
        if let Some(u) = self.u.as_mut() {
            for c in 0..u.ncols() {
                u[(i, c)] = ring.mul(unit.clone(), u[(i, c)].clone())?;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for r in 0..ui.nrows() {
                ui[(r, i)] = ring.mul(ui[(r, i)].clone(), unit_inv.clone())?;
            }
        }
        Ok(())
    }

    /// Moves the smallest nonzero entry of the trailing block to `(t, t)` and
    /// normalizes it. Returns `false` when the block is zero.
    fn place_pivot(&mut self, t: usize) -> Result<bool> {
        let ring = self.ring;
        let (m, n) = (self.a.nrows(), self.a.ncols());
        let mut best: Option<(R::Size, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &self.a[(i, j)];
                if !ring.is_zero(x) {
                    let s = ring.size(x);
                    if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                        best = Some((s, i, j));
                    }
                }
            }
        }
        let Some((_, bi, bj)) = best else { return Ok(false) };
        self.swap_rows(t, bi);
        self.swap_cols(t, bj);
        let (unit, unit_inv) = ring.normalize(self.a[(t, t)].clone());
        if unit != ring.one() {
            self.scale_row(t, unit, unit_inv)?;
        }
        Ok(true)
    }

    /// A row below `t` holding an entry of the trailing block that the pivot
    /// does not divide.
    fn divisibility_witness(&self, t: usize) -> Option<usize> {
        let ring = self.ring;
        let p = &self.a[(t, t)];
        (t + 1..self.a.nrows())
            .find(|&i| (t + 1..self.a.ncols()).any(|j| !ring.divides(p.clone(), self.a[(i, j)].clone())))
    }

    /// Clears column `t` below the pivot. Returns whether the pivot changed.
    fn clear_column(&mut self, t: usize) -> Result<bool> {
        let ring = self.ring;
        let mut changed = false;
        for i in t + 1..self.a.nrows() {
            let b = self.a[(i, t)].clone();
            if ring.is_zero(&b) {
                continue;
            }
            let p = self.a[(t, t)].clone();
            if ring.divides(p.clone(), b.clone()) {
                self.sub_row(t, i, ring.div_exact(b, p)?)?;
            } else {
                let (g, s, x) = ring.gcdext(p.clone(), b.clone())?;
                let bg = ring.div_exact(b, g.clone())?;
                let pg = ring.div_exact(p, g)?;
                self.rows(t, i, [s, x, ring.neg(bg)?, pg])?;
                changed = true;
            }
        }
        Ok(changed)
    }

    fn clear_row(&mut self, t: usize) -> Result<bool> {
        let ring = self.ring;
        let mut changed = false;
        for j in t + 1..self.a.ncols() {
            let b = self.a[(t, j)].clone();
            if ring.is_zero(&b) {
                continue;
            }
            let p = self.a[(t, t)].clone();
            if ring.divides(p.clone(), b.clone()) {
                self.sub_col(t, j, ring.div_exact(b, p)?)?;
            } else {
                let (g, s, x) = ring.gcdext(p.clone(), b.clone())?;
                let bg = ring.div_exact(b, g.clone())?;
                let pg = ring.div_exact(p, g)?;
                self.cols(t, j, [s, x, ring.neg(bg)?, pg])?;
                changed = true;
            }
        }
        Ok(changed)
    }

    /// Euclidean elimination: the pivot is always the smallest entry left in
    /// the block, and its row and column are reduced by nearest quotients, so
    /// every remainder is at most half the pivot. This keeps entries (and the
    /// transforms) from growing the way extended-gcd steps make them grow.
    fn run_euclidean(&mut self) -> Result<()> {
        let ring = self.ring;
        let (m, n) = (self.a.nrows(), self.a.ncols());
        for t in 0..m.min(n) {
            loop {
                if !self.place_pivot(t)? {
                    return Ok(());
                }
                let p = self.a[(t, t)].clone();
                let mut residue = false;
                for i in t + 1..m {
                    let b = self.a[(i, t)].clone();
                    if !ring.is_zero(&b) {
                        self.sub_row(t, i, ring.nearest_quotient(b, p.clone()).expect("euclidean ring"))?;
                        residue |= !ring.is_zero(&self.a[(i, t)]);
                    }
                }
                for j in t + 1..n {
                    let b = self.a[(t, j)].clone();
                    if !ring.is_zero(&b) {
                        self.sub_col(t, j, ring.nearest_quotient(b, p.clone()).expect("euclidean ring"))?;
                        residue |= !ring.is_zero(&self.a[(t, j)]);
                    }
                }
                if residue {
                    continue;
                }
                match self.divisibility_witness(t) {
                    Some(i) => self.rows(t, i, [ring.one(), ring.one(), ring.zero(), ring.one()])?,
                    None => break,
                }
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let ring = self.ring;
        if ring.nearest_quotient(ring.one(), ring.one()).is_some() {
            return self.run_euclidean();
        }
        for t in 0..self.a.nrows().min(self.a.ncols()) {
            if !self.place_pivot(t)? {
                break;
            }
            loop {
                let (unit, unit_inv) = ring.normalize(self.a[(t, t)].clone());
                if unit != ring.one() {
                    self.scale_row(t, unit, unit_inv)?;
                }
                if self.clear_column(t)? || self.clear_row(t)? {
                    continue;
                }
                match self.divisibility_witness(t) {
                    Some(i) => self.rows(t, i, [ring.one(), ring.one(), ring.zero(), ring.one()])?,
                    None => break,
                }
            }
        }
        Ok(())
    }
}

pub fn smith<R: PivotRing>(ring: &R, a: Matrix<R::Elem>, track: Track) -> Result<Smith<R::Elem>> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut e = Elim {
        ring,
        a,
        u: track.u.then(|| identity(ring, m)),
        u_inv: track.u_inv.then(|| identity(ring, m)),
        v: track.v.then(|| identity(ring, n)),
        v_inv: track.v_inv.then(|| identity(ring, n)),
    };
    e.run()?;
    Ok(Smith { d: e.a, u: e.u, u_inv: e.u_inv, v: e.v, v_inv: e.v_inv })
}

/// Integer Smith normal form: returns `(U, D, V)` with `U * A * V = D`.
///
/// The transforms can be far larger than the entries of `A` (random 8x8
/// matrices with single-digit entries reach 30 digits), so they are exact
/// big integers.
pub fn smith_normal_form(a: &Matrix<i64>) -> (Matrix<BigInt>, Matrix<BigInt>, Matrix<BigInt>) {
    let s = smith(&Integers, a.map(|&x| BigInt::from(x)), Track { u: true, v: true, ..Track::NONE })
        .expect("integer elimination is infallible");
    (s.u.unwrap(), s.d, s.v.unwrap())
}
