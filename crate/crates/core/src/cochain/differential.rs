//! Coboundary maps `C1 -> C2 -> C3` on normalized cochains.

use super::{Cochain, Cochain1, Cochain2, Cochain3};
use crate::algebra::Bimodule;

fn sum(m: &Bimodule, plus: &[usize], minus: &[usize]) -> usize {
    let p = plus.iter().fold(0, |acc, &v| m.add(acc, v));
    minus.iter().fold(p, |acc, &v| m.sub(acc, v))
}

/// `mu(x,y) = a(x) - a(x+y) + a(y)`, `nu(x,y) = x a(y) - a(xy) + a(x) y`.
pub fn delta1(m: &Bimodule, a: &Cochain1) -> Cochain2 {
    let r = m.ring();
    let n = r.order();
    assert!(a.is_normalized(r), "delta1 expects a normalized 1-cochain");
    let mut g = Cochain2::zero(n);
    for x in 0..n {
        for y in 0..n {
            let mu = sum(m, &[a.a(x), a.a(y)], &[a.a(r.add(x, y))]);
            let nu = sum(m, &[m.left(x, a.a(y)), m.right(a.a(x), y)], &[a.a(r.mul(x, y))]);
            g.mu[x * n + y] = mu;
            g.nu[x * n + y] = nu;
        }
    }
    debug_assert!(g.is_normalized(r));
    g
}

/// Coboundary of a normalized 2-cochain, with `lambda` on the cocycle side.
pub fn delta2(m: &Bimodule, g: &Cochain2) -> Cochain3 {
    let r = m.ring();
    let n = r.order();
    assert!(g.is_normalized(r), "delta2 expects a normalized 2-cochain");
    let (mu, nu) = (|x, y| g.mu(x, y), |x, y| g.nu(x, y));
    let mut f = Cochain3::zero(n);
    for x in 0..n {
        for y in 0..n {
            f.eta[x * n + y] = m.sub(mu(x, y), mu(y, x));
            for z in 0..n {
                let (xy, yz, xz) = (r.mul(x, y), r.mul(y, z), r.mul(x, z));
                let i = (x * n + y) * n + z;
                f.zeta[i] = sum(m, &[mu(y, z), mu(x, r.add(y, z))], &[mu(r.add(x, y), z), mu(x, y)]);
                f.alpha[i] = sum(m, &[m.left(x, nu(y, z)), nu(x, yz)], &[nu(xy, z), m.right(nu(x, y), z)]);
                // cocycle-side lambda is minus the bracket
                f.lambda[i] = sum(
                    m,
                    &[nu(x, y), nu(x, z), mu(xy, xz)],
                    &[nu(x, r.add(y, z)), m.left(x, mu(y, z))],
                );
                f.rho[i] = sum(
                    m,
                    &[nu(r.add(x, y), z), m.right(mu(x, y), z)],
                    &[nu(x, z), nu(y, z), mu(xz, r.mul(y, z))],
                );
            }
        }
    }
    assert!(f.is_normalized(r), "delta2 produced a non-normalized cochain");
    f
}
