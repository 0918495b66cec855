use super::group::FiniteAbelianGroup;
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// A finite ring, possibly without unit. Element 0 is the additive zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRng {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
}

fn axiom<T>(axiom: &str, witness: Vec<usize>) -> Result<T> {
    Err(Error::Axiom { structure: "ring", axiom: axiom.to_string(), witness })
}

impl FiniteRng {
    /// Validates every ring axiom except the existence of a unit.
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return invalid("a ring needs at least one element");
        }
        if mul.len() != n || add.iter().chain(&mul).any(|r| r.len() != n) {
            return invalid(format!("tables must be {n}x{n}"));
        }
        if add.iter().chain(&mul).flatten().any(|&x| x >= n) {
            return invalid(format!("table entry out of range 0..{n}"));
        }
        if zero != 0 {
            return invalid("element 0 must be the additive zero");
        }
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().collect::<Vec<_>>();
        let add = flat(add);
        let mul = flat(mul);
        let a = |x: usize, y: usize| add[x * n + y];
        let m = |x: usize, y: usize| mul[x * n + y];
        for x in 0..n {
            if a(0, x) != x || a(x, 0) != x {
                return axiom("additive identity", vec![x]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return axiom("additive commutativity", vec![x, y]);
                }
            }
        }
        let mut neg = vec![usize::MAX; n];
        for (x, slot) in neg.iter_mut().enumerate() {
            match (0..n).find(|&y| a(x, y) == 0) {
                Some(y) => *slot = y,
                None => return axiom("additive inverse", vec![x]),
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return axiom("additive associativity", vec![x, y, z]);
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return axiom("multiplicative associativity", vec![x, y, z]);
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return axiom("left distributivity", vec![x, y, z]);
                    }
                    if m(a(x, y), z) != a(m(x, z), m(y, z)) {
                        return axiom("right distributivity", vec![x, y, z]);
                    }
                }
            }
        }
        Ok(FiniteRng { order: n, add, mul, neg })
    }

    /// `Z/n` with all products zero.
    pub fn null_cyclic(n: usize) -> Self {
        let add = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let mul = vec![vec![0; n]; n];
        FiniteRng::from_tables(add, mul, 0).expect("null ring")
    }

    /// The ideal `dZ/nZ` as a ring without unit, elements listed as `0, d, 2d, ...`.
    pub fn multiples_in_cyclic(d: usize, n: usize) -> Result<Self> {
        if d == 0 || !n.is_multiple_of(d) {
            return invalid(format!("{d} does not divide {n}"));
        }
        let k = n / d;
        let add = (0..k).map(|x| (0..k).map(|y| (x + y) % k).collect()).collect();
        let mul = (0..k).map(|x| (0..k).map(|y| (x * y * d * d) % n / d).collect()).collect();
        FiniteRng::from_tables(add, mul, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// The additive group and the coordinates of each element.
    pub fn additive_group(&self) -> (FiniteAbelianGroup, Vec<Vec<u64>>) {
        FiniteAbelianGroup::from_cayley(self.order, |x, y| self.add(x, y), 0)
    }

    /// `k * x` for a nonnegative integer `k`.
    pub fn times(&self, k: u64, x: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k % self.additive_order(x) as u64 {
            acc = self.add(acc, x);
        }
        acc
    }

    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    pub fn is_null(&self) -> bool {
        self.mul.iter().all(|&x| x == 0)
    }

    pub fn find_unit(&self) -> Option<usize> {
        (0..self.order).find(|&u| (0..self.order).all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
    }
}

/// A finite ring with unit `1 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    rng: FiniteRng,
    unit: usize,
}

impl std::ops::Deref for FiniteRing {
    type Target = FiniteRng;
    fn deref(&self) -> &FiniteRng {
        &self.rng
    }
}

/// Ring descriptions accepted by [`make_ring`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingSpec {
    Cyclic(usize),
    Product(Box<RingSpec>, Box<RingSpec>),
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        unit: usize,
    },
}

pub fn make_ring(spec: &RingSpec) -> Result<FiniteRing> {
    match spec {
        RingSpec::Cyclic(n) => FiniteRing::cyclic(*n),
        RingSpec::Product(a, b) => Ok(FiniteRing::product(&make_ring(a)?, &make_ring(b)?)),
        RingSpec::Tables { add, mul, zero, unit } => {
            FiniteRing::from_tables(add.clone(), mul.clone(), *zero, *unit)
        }
    }
}

impl FiniteRing {
    pub fn from_rng(rng: FiniteRng, unit: usize) -> Result<Self> {
        let n = rng.order();
        if unit >= n {
            return invalid(format!("unit index {unit} out of range"));
        }
        if unit == 0 {
            return axiom("unit differs from zero", vec![unit]);
        }
        for x in 0..n {
            if rng.mul(unit, x) != x || rng.mul(x, unit) != x {
                return axiom("two-sided unit", vec![x]);
            }
        }
        Ok(FiniteRing { rng, unit })
    }

    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, zero: usize, unit: usize) -> Result<Self> {
        FiniteRing::from_rng(FiniteRng::from_tables(add, mul, zero)?, unit)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n < 2 {
            return invalid("Z/n needs n >= 2");
        }
        let add = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let mul = (0..n).map(|x| (0..n).map(|y| (x * y) % n).collect()).collect();
        FiniteRing::from_tables(add, mul, 0, 1)
    }

    /// `Z/n[e]/(e^2)`, element `a + b e` stored at index `a + n b`.
    pub fn dual_numbers(n: usize) -> Result<Self> {
        if n < 2 {
            return invalid("dual numbers need n >= 2");
        }
        let split = |x: usize| (x % n, x / n);
        let join = |a: usize, b: usize| (a % n) + n * (b % n);
        let size = n * n;
        let add = (0..size)
            .map(|x| (0..size).map(|y| { let (a, b) = split(x); let (c, d) = split(y); join(a + c, b + d) }).collect())
            .collect();
        let mul = (0..size)
            .map(|x| (0..size).map(|y| { let (a, b) = split(x); let (c, d) = split(y); join(a * c, a * d + b * c) }).collect())
            .collect();
        FiniteRing::from_tables(add, mul, 0, 1)
    }

    /// Elements `(a, b)` at index `a * |s| + b`.
    pub fn product(r: &FiniteRing, s: &FiniteRing) -> FiniteRing {
        let (n, m) = (r.order(), s.order());
        let split = |x: usize| (x / m, x % m);
        let add = (0..n * m)
            .map(|x| (0..n * m).map(|y| { let (a, b) = split(x); let (c, d) = split(y); r.add(a, c) * m + s.add(b, d) }).collect())
            .collect();
        let mul = (0..n * m)
            .map(|x| (0..n * m).map(|y| { let (a, b) = split(x); let (c, d) = split(y); r.mul(a, c) * m + s.mul(b, d) }).collect())
            .collect();
        FiniteRing::from_tables(add, mul, 0, r.unit() * m + s.unit()).expect("product of rings")
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn rng(&self) -> &FiniteRng {
        &self.rng
    }

    /// Whether `x` is 0 or 1.
    pub fn is_trivial_arg(&self, x: usize) -> bool {
        x == 0 || x == self.unit
    }
}

/// First violated ring-homomorphism condition for `f: r -> s`, if any.
pub fn ring_hom_violation(f: &[usize], r: &FiniteRing, s: &FiniteRing) -> Option<(String, Vec<usize>)> {
    if f.len() != r.order() || f.iter().any(|&y| y >= s.order()) {
        return Some(("table shape".into(), vec![]));
    }
    if f[0] != 0 {
        return Some(("preserves zero".into(), vec![0]));
    }
    if f[r.unit()] != s.unit() {
        return Some(("preserves unit".into(), vec![r.unit()]));
    }
    for x in r.elements() {
        for y in r.elements() {
            if f[r.add(x, y)] != s.add(f[x], f[y]) {
                return Some(("additive".into(), vec![x, y]));
            }
            if f[r.mul(x, y)] != s.mul(f[x], f[y]) {
                return Some(("multiplicative".into(), vec![x, y]));
            }
        }
    }
    None
}

/// An isomorphism of rings without unit, as a table, if one exists.
pub fn find_isomorphism(r: &FiniteRng, s: &FiniteRng) -> Option<Vec<usize>> {
    if r.order() != s.order() {
        return None;
    }
    let (g, coords) = r.additive_group();
    let (h, _) = s.additive_group();
    if g != h {
        return None;
    }
    let gens: Vec<usize> = (0..g.rank())
        .map(|i| coords.iter().position(|c| *c == g.generator(i)).unwrap())
        .collect();
    let candidates: Vec<Vec<usize>> = g
        .invariant_factors()
        .iter()
        .map(|&d| (0..s.order()).filter(|&y| s.additive_order(y) as u64 == d).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let map: Vec<usize> = coords
            .iter()
            .map(|c| {
                c.iter().zip(&images).fold(0, |acc, (&k, &y)| s.add(acc, s.times(k, y)))
            })
            .collect();
        let mut seen = vec![false; s.order()];
        let bijective = map.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
        if bijective
            && r.elements().all(|x| r.elements().all(|y| map[r.mul(x, y)] == s.mul(map[x], map[y])))
        {
            return Some(map);
        }
        // odometer over generator images
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
