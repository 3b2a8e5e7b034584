//! Finitely generated abelian groups in canonical invariant-factor form.
//!
//! A value of [`FgAbelianGroup`] is a pair (free rank, invariant factors)
//! with `1 < d_1 | d_2 | ... | d_k`. Two values are equal exactly when the
//! groups they present are isomorphic, which makes this the common currency
//! for comparing computed cokernels against closed-form expressions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("torsion modulus {0} is smaller than 2")]
    ModulusTooSmall(u64),
}

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k`
/// with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    #[serde(
        serialize_with = "serialize_factors",
        deserialize_with = "deserialize_factors"
    )]
    invariant_factors: Vec<BigUint>,
}

impl FgAbelianGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    /// The free group `Z^rank`.
    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Canonical form of a direct sum of cyclic groups `Z/m` (moduli need not
    /// form a chain) plus a free part.
    pub fn from_summands<I>(torsion_moduli: I, free_rank: usize) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut factors = Vec::new();
        for m in torsion_moduli {
            if m < 2 {
                return Err(GroupError::ModulusTooSmall(m));
            }
            factors.push(BigUint::from(m));
        }
        Ok(Self::from_cyclic_big(factors, free_rank))
    }

    /// Same as [`FgAbelianGroup::from_summands`] for big moduli already known
    /// to be `>= 2` (unit factors are dropped, zeros are not allowed).
    pub fn from_cyclic_big(moduli: Vec<BigUint>, free_rank: usize) -> Self {
        for m in &moduli {
            assert!(!m.is_zero(), "a zero modulus denotes Z; add it to the free rank");
        }
        FgAbelianGroup {
            free_rank,
            invariant_factors: canonical_chain(moduli),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// The torsion subgroup, i.e. this group with the free part dropped.
    pub fn torsion(&self) -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// Canonical form of `self + other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut moduli = self.invariant_factors.clone();
        moduli.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_big(moduli, self.free_rank + other.free_rank)
    }

    /// The n-fold direct sum; `n = 0` gives the trivial group.
    pub fn power(&self, n: usize) -> Self {
        let mut moduli = Vec::with_capacity(self.invariant_factors.len() * n);
        for _ in 0..n {
            moduli.extend_from_slice(&self.invariant_factors);
        }
        Self::from_cyclic_big(moduli, self.free_rank * n)
    }

    /// Deterministic rendering, torsion first: `(Z/2)^2 + Z/4 + Z^3`,
    /// `0` for the trivial group.
    pub fn render(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let mut j = i;
            while j < self.invariant_factors.len() && &self.invariant_factors[j] == d {
                j += 1;
            }
            let count = j - i;
            if count == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{count}"));
            }
            i = j;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Reduce a multiset of moduli `>= 2` to the divisibility chain
/// `d_1 | d_2 | ... | d_k` presenting the same group.
///
/// Works by repeated `(a, b) -> (gcd, lcm)` replacement, which avoids
/// factoring and so handles arbitrarily large moduli.
fn canonical_chain(mut moduli: Vec<BigUint>) -> Vec<BigUint> {
    let one = BigUint::one();
    moduli.retain(|m| *m != one);
    loop {
        moduli.sort();
        let mut changed = false;
        for i in 0..moduli.len() {
            for j in (i + 1)..moduli.len() {
                if !moduli[j].is_multiple_of(&moduli[i]) {
                    let g = moduli[i].gcd(&moduli[j]);
                    let l = moduli[i].lcm(&moduli[j]);
                    moduli[i] = g;
                    moduli[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        moduli.retain(|m| *m != one);
    }
    moduli
}

fn serialize_factors<S: Serializer>(factors: &[BigUint], ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(factors.len()))?;
    for d in factors {
        // JSON-friendly: plain number when it fits, decimal string otherwise
        match u64::try_from(d) {
            Ok(n) => seq.serialize_element(&n)?,
            Err(_) => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

fn deserialize_factors<'de, D>(de: D) -> Result<Vec<BigUint>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    use serde::de::Error;
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrString {
        Num(u64),
        Str(String),
    }
    let raw = Vec::<NumOrString>::deserialize(de)?;
    raw.into_iter()
        .map(|v| match v {
            NumOrString::Num(n) => Ok(BigUint::from(n)),
            NumOrString::Str(s) => s
                .parse::<BigUint>()
                .map_err(|e| D::Error::custom(format!("bad invariant factor: {e}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(moduli: &[u64], rank: usize) -> FgAbelianGroup {
        FgAbelianGroup::from_summands(moduli.iter().copied(), rank).unwrap()
    }

    #[test]
    fn coprime_summands_merge() {
        assert_eq!(g(&[2, 3], 0), g(&[6], 0));
    }

    #[test]
    fn non_coprime_summands_recombine() {
        // Z/4 + Z/6 = Z/2 + Z/12
        let got = g(&[4, 6], 1);
        assert_eq!(got.free_rank(), 1);
        let factors: Vec<u64> = got
            .invariant_factors()
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect();
        assert_eq!(factors, vec![2, 12]);
        // same as the lcm/gcd form
        assert_eq!(got, g(&[12, 2], 1));
    }

    #[test]
    fn free_group() {
        assert_eq!(g(&[], 8), FgAbelianGroup::free(8));
        assert_eq!(g(&[], 8).render(), "Z^8");
    }

    #[test]
    fn summand_order_is_irrelevant() {
        assert_eq!(g(&[4, 6, 10, 9], 2), g(&[9, 10, 6, 4], 2));
        assert_eq!(g(&[8, 12, 2], 0), g(&[2, 12, 8], 0));
    }

    #[test]
    fn lcm_gcd_identity() {
        for a in 2u64..12 {
            for b in 2u64..12 {
                let gcd = num_integer::gcd(a, b);
                let lcm = a / gcd * b;
                let mut expected = vec![lcm];
                if gcd > 1 {
                    expected.push(gcd);
                }
                assert_eq!(g(&[a, b], 0), g(&expected, 0), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn modulus_below_two_rejected() {
        assert_eq!(
            FgAbelianGroup::from_summands([1u64], 0),
            Err(GroupError::ModulusTooSmall(1))
        );
        assert_eq!(
            FgAbelianGroup::from_summands([0u64], 3),
            Err(GroupError::ModulusTooSmall(0))
        );
    }

    #[test]
    fn direct_sum_commutes_and_associates() {
        let a = g(&[2, 4], 1);
        let b = g(&[6], 2);
        let c = g(&[5], 0);
        assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        assert_eq!(
            a.direct_sum(&b).direct_sum(&c),
            a.direct_sum(&b.direct_sum(&c))
        );
        // (Z/2) + (Z/4 + Z) = factors (2,4), rank 1
        assert_eq!(g(&[2], 0).direct_sum(&g(&[4], 1)), g(&[2, 4], 1));
    }

    #[test]
    fn power_examples() {
        let z2_plus_z = g(&[2], 1);
        assert_eq!(z2_plus_z.power(3), g(&[2, 2, 2], 3));
        assert_eq!(g(&[7], 4).power(0), FgAbelianGroup::trivial());
        assert_eq!(FgAbelianGroup::free(8).power(2), FgAbelianGroup::free(16));
    }

    #[test]
    fn render_examples() {
        assert_eq!(FgAbelianGroup::trivial().render(), "0");
        assert_eq!(FgAbelianGroup::free(8).render(), "Z^8");
        assert_eq!(g(&[2, 2, 4], 1).render(), "(Z/2)^2 + Z/4 + Z");
        assert_eq!(g(&[12, 2], 5).render(), "Z/2 + Z/12 + Z^5");
    }

    #[test]
    fn json_round_trip() {
        let a = g(&[2, 6, 6], 24);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"free_rank":24,"invariant_factors":[2,6,6]}"#);
        let back: FgAbelianGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
