//! JSON file formats. Ring elements are indices; module elements are residue
//! tuples against the invariant factors.

use crate::algebra::{make_bimodule, Bimodule, BimoduleSpec, FiniteAbelianGroup, FiniteRing, FiniteRng};
use crate::cochain::{AnyCochain, Cochain, Cochain1, Cochain2, Cochain3};
use crate::error::{invalid, Result};
use crate::extension::{Bimultiplication, BimultRing, RegularHomTheta};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
}

impl RingFile {
    pub fn from_rng(r: &FiniteRng, unit: Option<usize>) -> Self {
        RingFile { order: r.order(), add: r.add_table(), mul: r.mul_table(), zero: 0, unit }
    }

    pub fn from_ring(r: &FiniteRing) -> Self {
        RingFile::from_rng(r.rng(), Some(r.unit()))
    }

    fn check_order(&self) -> Result<()> {
        if self.add.len() != self.order {
            return invalid(format!("field `add`: expected {} rows, found {}", self.order, self.add.len()));
        }
        Ok(())
    }

    pub fn to_rng(&self) -> Result<FiniteRng> {
        self.check_order()?;
        FiniteRng::from_tables(self.add.clone(), self.mul.clone(), self.zero)
    }

    pub fn to_ring(&self) -> Result<FiniteRing> {
        let Some(unit) = self.unit else {
            return invalid("field `unit`: required for this ring");
        };
        FiniteRing::from_rng(self.to_rng()?, unit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BimoduleFile {
    /// `left[r][m]` and `right[m][r]`, module elements in lexicographic order
    Tables {
        invariant_factors: Vec<u64>,
        left: Vec<Vec<Vec<u64>>>,
        right: Vec<Vec<Vec<u64>>>,
    },
    /// `"regular"` or `"trivial"`
    Named { kind: String },
}

impl BimoduleFile {
    pub fn from_module(m: &Bimodule) -> Self {
        BimoduleFile::Tables {
            invariant_factors: m.factors().to_vec(),
            left: m.left_table(),
            right: m.right_table(),
        }
    }

    pub fn to_module(&self, ring: &FiniteRing) -> Result<Bimodule> {
        let spec = match self {
            BimoduleFile::Tables { invariant_factors, left, right } => BimoduleSpec::Tables {
                invariant_factors: invariant_factors.clone(),
                left: left.clone(),
                right: right.clone(),
            },
            BimoduleFile::Named { kind } => match kind.as_str() {
                "regular" => BimoduleSpec::Regular,
                "trivial" => BimoduleSpec::Trivial,
                other => return invalid(format!("field `kind`: unknown module kind `{other}`")),
            },
        };
        make_bimodule(ring, &spec)
    }
}

/// Component tables are row-major over `R^k`, one residue tuple per entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub level: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<u64>>>,
}

fn encode_table(m: &Bimodule, t: &[usize]) -> Option<Vec<Vec<u64>>> {
    Some(t.iter().map(|&v| m.coords(v).to_vec()).collect())
}

fn decode_table(m: &Bimodule, name: &str, t: &Option<Vec<Vec<u64>>>, len: usize) -> Result<Vec<usize>> {
    let Some(t) = t else {
        return invalid(format!("field `{name}`: missing"));
    };
    if t.len() != len {
        return invalid(format!("field `{name}`: expected {len} entries, found {}", t.len()));
    }
    t.iter()
        .enumerate()
        .map(|(i, c)| match m.try_from_coords(c) {
            Some(v) => Ok(v),
            None => invalid(format!("field `{name}`, entry {i}: {c:?} is not a module element")),
        })
        .collect()
}

impl CochainFile {
    pub fn from_cochain(m: &Bimodule, c: &AnyCochain) -> Self {
        let e = |t: &[usize]| encode_table(m, t);
        match c {
            AnyCochain::One(c) => CochainFile { level: 1, a: e(&c.alpha), ..Default::default() },
            AnyCochain::Two(c) => CochainFile { level: 2, mu: e(&c.mu), nu: e(&c.nu), ..Default::default() },
            AnyCochain::Three(c) => CochainFile {
                level: 3,
                zeta: e(&c.zeta),
                eta: e(&c.eta),
                alpha: e(&c.alpha),
                lambda: e(&c.lambda),
                rho: e(&c.rho),
                ..Default::default()
            },
        }
    }

    pub fn to_cochain(&self, m: &Bimodule) -> Result<AnyCochain> {
        let n = m.ring().order();
        let present = |names: &[&str]| {
            let all = [
                ("a", &self.a),
                ("mu", &self.mu),
                ("nu", &self.nu),
                ("zeta", &self.zeta),
                ("eta", &self.eta),
                ("alpha", &self.alpha),
                ("lambda", &self.lambda),
                ("rho", &self.rho),
            ];
            match all.iter().find(|(k, v)| v.is_some() && !names.contains(k)) {
                Some((k, _)) => invalid(format!("field `{k}`: not a component of a {}-cochain", self.level)),
                None => Ok(()),
            }
        };
        let t = |name, v: &Option<Vec<Vec<u64>>>, arity: u32| decode_table(m, name, v, n.pow(arity));
        let c: AnyCochain = match self.level {
            1 => {
                present(&["a"])?;
                Cochain1::from_table(n, t("a", &self.a, 1)?).into()
            }
            2 => {
                present(&["mu", "nu"])?;
                Cochain2::from_tables(n, t("mu", &self.mu, 2)?, t("nu", &self.nu, 2)?).into()
            }
            3 => {
                present(&["zeta", "eta", "alpha", "lambda", "rho"])?;
                Cochain3::from_tables(
                    n,
                    t("zeta", &self.zeta, 3)?,
                    t("eta", &self.eta, 2)?,
                    t("alpha", &self.alpha, 3)?,
                    t("lambda", &self.lambda, 3)?,
                    t("rho", &self.rho, 3)?,
                )
                .into()
            }
            l => return invalid(format!("field `level`: {l} is not 1, 2 or 3")),
        };
        let violation = match &c {
            AnyCochain::One(c) => c.normalization_violation(m.ring()),
            AnyCochain::Two(c) => c.normalization_violation(m.ring()),
            AnyCochain::Three(c) => c.normalization_violation(m.ring()),
        };
        if let Some((comp, args)) = violation {
            return invalid(format!("field `{}`: not normalized, nonzero at {args:?}", comp.name()));
        }
        Ok(c)
    }
}

/// A homomorphism pair, with optional functor data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub f0: Vec<usize>,
    /// images of the canonical generators of the source module
    pub f1: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<Vec<u64>>>,
}

impl FunctorFile {
    /// The table of `F1` on all source elements.
    pub fn module_map(&self, source: &Bimodule, target: &Bimodule) -> Result<Vec<usize>> {
        if self.f1.len() != source.rank() {
            return invalid(format!(
                "field `f1`: expected {} generator images, found {}",
                source.rank(),
                self.f1.len()
            ));
        }
        let images = self
            .f1
            .iter()
            .enumerate()
            .map(|(i, c)| target.try_from_coords(c).ok_or(()).or_else(|_| invalid(format!("field `f1`, entry {i}: {c:?} is not a module element"))))
            .collect::<Result<Vec<usize>>>()?;
        for (i, (&img, &d)) in images.iter().zip(source.factors()).enumerate() {
            if target.times(d as i64, img) != 0 {
                return invalid(format!("field `f1`, entry {i}: image order does not divide {d}"));
            }
        }
        Ok((0..source.order())
            .map(|a| {
                source.coords(a).iter().zip(&images).fold(0, |acc, (&k, &y)| target.add(acc, target.times(k as i64, y)))
            })
            .collect())
    }

    /// `(mu, nu)` over the pulled module; zero when absent.
    pub fn data(&self, pulled: &Bimodule) -> Result<Cochain2> {
        let n = pulled.ring().order();
        let zero = || Some(vec![vec![0; pulled.rank()]; n * n]);
        let mu = if self.mu.is_some() { self.mu.clone() } else { zero() };
        let nu = if self.nu.is_some() { self.nu.clone() } else { zero() };
        Ok(Cochain2::from_tables(n, decode_table(pulled, "mu", &mu, n * n)?, decode_table(pulled, "nu", &nu, n * n)?))
    }

    pub fn with_data(mut self, pulled: &Bimodule, g: &Cochain2) -> Self {
        self.mu = encode_table(pulled, &g.mu);
        self.nu = encode_table(pulled, &g.nu);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LiftEntry {
    /// position in the enumeration of `ext-bimult`
    Index(usize),
    Tables(Bimultiplication),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaFile {
    pub lift: Vec<LiftEntry>,
}

impl ThetaFile {
    pub fn from_lift(lift: &[usize]) -> Self {
        ThetaFile { lift: lift.iter().map(|&i| LiftEntry::Index(i)).collect() }
    }

    pub fn to_theta(&self, ma: &BimultRing) -> Result<RegularHomTheta> {
        let lift = self
            .lift
            .iter()
            .enumerate()
            .map(|(x, e)| match e {
                LiftEntry::Index(i) if *i < ma.order() => Ok(*i),
                LiftEntry::Index(i) => invalid(format!("field `lift`, entry {x}: no bimultiplication {i}")),
                LiftEntry::Tables(b) => match ma.index_of(b) {
                    Some(i) => Ok(i),
                    None => match b.violation(ma.base()) {
                        Some((rule, w)) => invalid(format!("field `lift`, entry {x}: rule `{rule}` fails at {w:?}")),
                        None => invalid(format!("field `lift`, entry {x}: not a bimultiplication")),
                    },
                },
            })
            .collect::<Result<_>>()?;
        Ok(RegularHomTheta { lift })
    }
}

/// `f` and `g` as row-major tables over `R x R` of elements of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSetsFile {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub invariant_factors: Vec<u64>,
    pub order: u128,
    pub description: String,
}

pub fn describe_group(g: &FiniteAbelianGroup) -> String {
    if g.is_trivial() {
        return "trivial group".into();
    }
    g.invariant_factors().iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" x ")
}

impl GroupReport {
    pub fn new(g: &FiniteAbelianGroup) -> Self {
        GroupReport { invariant_factors: g.invariant_factors().to_vec(), order: g.order(), description: describe_group(g) }
    }
}
