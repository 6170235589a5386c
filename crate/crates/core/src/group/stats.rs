use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 5;
pub const MAX_DEGREE: u32 = 30;

/// All partitions of `m`, parts nonincreasing, in reverse lexicographic order
/// (starting with `[m]`).
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(m: u32) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * k)
}

/// `m! / Π_i i^{a_i} a_i!` for a cycle type with `a_i` parts of size `i`.
pub fn class_size(cycle_type: &[u32]) -> BigUint {
    let m: u32 = cycle_type.iter().sum();
    let mut multiplicities: BTreeMap<u32, u32> = BTreeMap::new();
    for &part in cycle_type {
        *multiplicities.entry(part).or_insert(0) += 1;
    }
    let centralizer = multiplicities
        .iter()
        .fold(BigUint::one(), |acc, (&i, &a)| acc * BigUint::from(i).pow(a) * factorial(a));
    factorial(m) / centralizer
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub cycle_type: Vec<u32>,
    pub size: BigUint,
    /// Number of fixed points (parts equal to 1).
    pub fix: u32,
    pub sign: i8,
    /// Even class whose parts are distinct and odd: splits into two
    /// `Alt(m)`-classes.
    pub splits_in_alt: bool,
}

impl ConjugacyClass {
    pub fn new(cycle_type: Vec<u32>) -> ConjugacyClass {
        let fix = cycle_type.iter().filter(|&&c| c == 1).count() as u32;
        let even_parts = cycle_type.iter().filter(|&&c| c % 2 == 0).count();
        let sign = if even_parts % 2 == 0 { 1 } else { -1 };
        let mut distinct = cycle_type.clone();
        distinct.dedup();
        let splits_in_alt = sign == 1
            && distinct.len() == cycle_type.len()
            && cycle_type.iter().all(|c| c % 2 == 1);
        ConjugacyClass {
            size: class_size(&cycle_type),
            cycle_type,
            fix,
            sign,
            splits_in_alt,
        }
    }

    /// Character value of the deleted permutation representation (or its
    /// sgn-twist) at this class.
    pub fn value(&self, twist: Twist) -> i64 {
        let plain = self.fix as i64 - 1;
        match twist {
            Twist::Plain => plain,
            Twist::Sign => self.sign as i64 * plain,
        }
    }

    pub fn in_regime(&self, regime: Regime) -> bool {
        match regime {
            Regime::Alt => self.sign == 1,
            Regime::OddCoset => self.sign == -1,
            Regime::Sym => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    /// Even permutations.
    Alt,
    /// `Sym(m) ∖ Alt(m)`.
    OddCoset,
    Sym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Twist {
    Plain,
    Sign,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Alt => "alt",
            Regime::OddCoset => "odd-coset",
            Regime::Sym => "sym",
        })
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::Plain => "plain",
            Twist::Sign => "sgn",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupStats {
    pub m: u32,
    pub classes: Vec<ConjugacyClass>,
}

pub fn build_stats(m: u32) -> Result<GroupStats> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        return Err(Error::GroupDegreeOutOfRange { m });
    }
    Ok(GroupStats::unchecked(m))
}

impl GroupStats {
    /// No range check; used by the small-`m` identities below 5.
    pub(crate) fn unchecked(m: u32) -> GroupStats {
        GroupStats {
            m,
            classes: partitions(m).into_iter().map(ConjugacyClass::new).collect(),
        }
    }

    pub fn order(&self) -> BigUint {
        factorial(self.m)
    }

    pub fn regime_size(&self, regime: Regime) -> BigUint {
        self.classes
            .iter()
            .filter(|c| c.in_regime(regime))
            .map(|c| &c.size)
            .sum()
    }

    pub fn class(&self, cycle_type: &[u32]) -> Option<&ConjugacyClass> {
        self.classes.iter().find(|c| c.cycle_type == cycle_type)
    }
}

/// Class-size-weighted average of `value^power` over a regime.
pub fn exact_moment(stats: &GroupStats, regime: Regime, twist: Twist, power: u32) -> Result<BigRational> {
    if !(1..=6).contains(&power) {
        return Err(Error::InvalidArgument(format!("power {power} outside 1..=6")));
    }
    let mut total = BigInt::zero();
    for c in stats.classes.iter().filter(|c| c.in_regime(regime)) {
        total += BigInt::from(c.value(twist)).pow(power) * BigInt::from(c.size.clone());
    }
    Ok(BigRational::new(total, BigInt::from(stats.regime_size(regime))))
}

/// Exact distribution of character values over a regime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub regime: Regime,
    pub twist: Twist,
    #[serde(serialize_with = "serialize_probs")]
    pub probabilities: BTreeMap<i64, BigRational>,
}

fn serialize_probs<S: serde::Serializer>(
    map: &BTreeMap<i64, BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        m.serialize_entry(&k.to_string(), &crate::rational::format(v))?;
    }
    m.end()
}

impl SpectrumTable {
    pub fn contains(&self, value: i64) -> bool {
        self.probabilities.contains_key(&value)
    }

    pub fn probability(&self, value: i64) -> BigRational {
        self.probabilities
            .get(&value)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.probabilities.keys().copied()
    }

    /// `value,probability_num,probability_den` rows, ascending by value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,probability_num,probability_den\n");
        for (v, p) in &self.probabilities {
            out.push_str(&format!("{v},{},{}\n", p.numer(), p.denom()));
        }
        out
    }
}

pub fn spectrum(stats: &GroupStats, regime: Regime, twist: Twist) -> SpectrumTable {
    let total = BigInt::from(stats.regime_size(regime));
    let mut weights: BTreeMap<i64, BigInt> = BTreeMap::new();
    for c in stats.classes.iter().filter(|c| c.in_regime(regime)) {
        *weights.entry(c.value(twist)).or_insert_with(BigInt::zero) += BigInt::from(c.size.clone());
    }
    SpectrumTable {
        regime,
        twist,
        probabilities: weights
            .into_iter()
            .map(|(v, w)| (v, BigRational::new(w, total.clone())))
            .collect(),
    }
}

/// Bell numbers `B_0..=B_n` via the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut bells = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        bells.push(next[0].clone());
        row = next;
    }
    bells.truncate(n + 1);
    bells
}

/// Set partitions of an `n`-set without singleton blocks:
/// `Σ_k (-1)^k C(n,k) B_{n-k}`.
pub fn singleton_free_partitions(n: u32) -> BigInt {
    let bells = bell_numbers(n as usize);
    let mut binom = BigInt::one();
    let mut total = BigInt::zero();
    for k in 0..=n {
        let term = &binom * BigInt::from(bells[(n - k) as usize].clone());
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * (n - k) / (k + 1);
    }
    total
}

/// Convenience for tests and reports: a moment that must be an integer.
pub fn integer_moment(stats: &GroupStats, regime: Regime, twist: Twist, power: u32) -> Result<i64> {
    let r = exact_moment(stats, regime, twist, power)?;
    if r.is_integer() {
        r.to_integer()
            .to_i64()
            .ok_or_else(|| Error::CheckFailed("moment overflows i64".into()))
    } else {
        Err(Error::CheckFailed(format!(
            "moment {}/{} is not an integer",
            r.numer(),
            r.denom()
        )))
    }
}
