//! Milnor mu-bar invariants.
//!
//! `mu(i_1, ..., i_k)` is the Magnus coefficient at `(i_1, ..., i_{k-1})` of
//! the longitude of component `i_k`, rewritten in meridians modulo `F_k`.
//! It is only defined modulo `Δ(I)`, the gcd of the invariants obtained by
//! deleting at least one index and cyclically permuting what remains. Here
//! every deletion position and every rotation of the remainder is used,
//! recursively, so `Δ(I) = gcd(|mu(J)|, Δ(J))` over those `J`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::chen_milnor::longitude_series;
use crate::diagram::{LinkDiagram, WirtingerPresentation};
use crate::error::{Error, Result};
use crate::magnus::{MinWeight, MultiIndex, TruncatedSeries};
use crate::Guards;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorValue {
    pub index: MultiIndex,
    /// Reduced into `0..modulus` when the modulus is positive.
    pub value: BigInt,
    /// Zero when the value is a well-defined integer.
    pub modulus: BigInt,
}

impl MilnorValue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index.indices(),
            "value": big_json(&self.value),
            "modulus": big_json(&self.modulus),
        })
    }
}

impl fmt::Display for MilnorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu{} = {}", self.index, self.value)?;
        if !self.modulus.is_zero() {
            write!(f, " (mod {})", self.modulus)?;
        }
        Ok(())
    }
}

pub(crate) fn big_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

/// Every invariant of weight `2..=weight_cap`, stored densely per weight in
/// lexicographic order of the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorTable {
    pub n_components: usize,
    pub weight_cap: usize,
    weights: Vec<Vec<MilnorValue>>,
    pub first_nonvanishing: MinWeight,
}

impl MilnorTable {
    /// Build from longitude expansions, one per component, each truncated
    /// at `weight_cap - 1` or above and correct in those weights.
    pub fn from_longitudes(
        longitudes: &[TruncatedSeries<BigInt>],
        weight_cap: usize,
    ) -> Result<Self> {
        if weight_cap < 2 {
            return Err(Error::InvalidArgument(
                "weight cap must be at least 2".into(),
            ));
        }
        let n = longitudes.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a link needs at least one component".into(),
            ));
        }
        // raw values and Δ, per weight, dense
        let mut raw: Vec<Vec<BigInt>> = Vec::new();
        let mut delta: Vec<Vec<BigInt>> = Vec::new();
        let mut weights = Vec::new();
        let mut first = None;
        for k in 2..=weight_cap {
            let size =
                n.checked_pow(k as u32)
                    .filter(|&s| s <= 50_000_000)
                    .ok_or(Error::Resource {
                        what: "table entries",
                        size: usize::MAX,
                        limit: 50_000_000,
                    })?;
            let mut r = Vec::with_capacity(size);
            let mut d = Vec::with_capacity(size);
            let mut row = Vec::with_capacity(size);
            for pos in 0..size {
                let idx = decode(pos, n, k);
                let last = *idx.last().expect("weight >= 2") as usize;
                let head = MultiIndex::from(&idx[..k - 1]);
                let value = longitudes[last - 1].coefficient(&head)?;
                let mut g = BigInt::zero();
                if k > 2 {
                    for del in 0..k {
                        let mut j: Vec<u16> = idx.clone();
                        j.remove(del);
                        for rot in 0..k - 1 {
                            let p = encode(&j, n, rot);
                            g = g.gcd(&raw[k - 3][p]).gcd(&delta[k - 3][p]);
                        }
                    }
                }
                let reduced = if g.is_zero() {
                    value.clone()
                } else {
                    value.mod_floor(&g)
                };
                if first.is_none() && !reduced.is_zero() {
                    first = Some(k);
                }
                row.push(MilnorValue {
                    index: MultiIndex::new(idx),
                    value: reduced,
                    modulus: g.clone(),
                });
                r.push(value.abs());
                d.push(g);
            }
            raw.push(r);
            delta.push(d);
            weights.push(row);
        }
        Ok(MilnorTable {
            n_components: n,
            weight_cap,
            weights,
            first_nonvanishing: match first {
                Some(q) => MinWeight::Exact(q),
                None => MinWeight::AtLeast(weight_cap + 1),
            },
        })
    }

    pub fn get(&self, index: &MultiIndex) -> Option<&MilnorValue> {
        let k = index.weight();
        if k < 2 || k > self.weight_cap {
            return None;
        }
        let idx = index.indices();
        if idx
            .iter()
            .any(|&i| i == 0 || i as usize > self.n_components)
        {
            return None;
        }
        Some(&self.weights[k - 2][encode(idx, self.n_components, 0)])
    }

    /// All entries of weight `k`, lexicographically.
    pub fn weight(&self, k: usize) -> &[MilnorValue] {
        if k < 2 || k > self.weight_cap {
            return &[];
        }
        &self.weights[k - 2]
    }

    pub fn entries(&self) -> impl Iterator<Item = &MilnorValue> {
        self.weights.iter().flatten()
    }

    /// Nonzero entries at the first non-vanishing weight.
    pub fn witnesses(&self) -> Vec<&MilnorValue> {
        match self.first_nonvanishing {
            MinWeight::Exact(q) => self.weight(q).iter().filter(|v| !v.is_zero()).collect(),
            MinWeight::AtLeast(_) => Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "first_nonvanishing": self.first_nonvanishing.exact(),
            "entries": self.entries().map(MilnorValue::to_json).collect::<Vec<_>>(),
        })
    }
}

fn decode(mut pos: usize, n: usize, k: usize) -> Vec<u16> {
    let mut idx = vec![0u16; k];
    for slot in idx.iter_mut().rev() {
        *slot = (pos % n) as u16 + 1;
        pos /= n;
    }
    idx
}

/// Dense position of `idx` rotated left by `rot`.
fn encode(idx: &[u16], n: usize, rot: usize) -> usize {
    let k = idx.len();
    (0..k).fold(0, |acc, t| acc * n + (idx[(t + rot) % k] as usize - 1))
}

/// Longitude expansions at `level`, in 64-bit arithmetic when it fits.
pub fn longitudes(
    p: &WirtingerPresentation,
    level: usize,
    guards: &Guards,
) -> Result<Vec<TruncatedSeries<BigInt>>> {
    match longitude_series::<i64>(p, level, guards) {
        Ok(v) => v.iter().map(|s| s.convert::<BigInt>()).collect(),
        Err(Error::Overflow) => longitude_series::<BigInt>(p, level, guards),
        Err(e) => Err(e),
    }
}

pub fn milnor_table(d: &LinkDiagram, weight_cap: usize, guards: &Guards) -> Result<MilnorTable> {
    if weight_cap < 2 {
        return Err(Error::InvalidArgument(
            "weight cap must be at least 2".into(),
        ));
    }
    let p = d.wirtinger();
    let l = longitudes(&p, weight_cap, guards)?;
    MilnorTable::from_longitudes(&l, weight_cap)
}

/// A single invariant, with its indeterminacy.
pub fn mu_bar(
    d: &LinkDiagram,
    index: &MultiIndex,
    weight_cap: usize,
    guards: &Guards,
) -> Result<MilnorValue> {
    let k = index.weight();
    if k < 2 || k > weight_cap {
        return Err(Error::InvalidArgument(format!(
            "index weight {k} outside 2..={weight_cap}"
        )));
    }
    let n = d.n_components();
    if let Some(&bad) = index.indices().iter().find(|&&i| i == 0 || i as usize > n) {
        return Err(Error::ComponentOutOfRange {
            index: bad as usize,
            available: n,
        });
    }
    let t = milnor_table(d, k, guards)?;
    Ok(t.get(index).expect("index in range").clone())
}

/// Smallest weight with a nonzero invariant and every index witnessing it.
pub fn first_nonvanishing(
    d: &LinkDiagram,
    weight_cap: usize,
    guards: &Guards,
) -> Result<(MinWeight, Vec<MultiIndex>)> {
    let t = milnor_table(d, weight_cap, guards)?;
    let w = t.witnesses().into_iter().map(|v| v.index.clone()).collect();
    Ok((t.first_nonvanishing, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn table(json: &str, cap: usize) -> MilnorTable {
        milnor_table(&parse_pd(json).unwrap(), cap, &Guards::default()).unwrap()
    }

    #[test]
    fn index_packing() {
        for pos in 0..81 {
            let idx = decode(pos, 3, 4);
            assert_eq!(encode(&idx, 3, 0), pos);
        }
        assert_eq!(decode(encode(&[1, 2, 3], 3, 1), 3, 3), vec![2, 3, 1]);
    }

    #[test]
    fn hopf_weight_two() {
        let t = table(r#"{"crossings":[[1,3,2,4],[3,1,4,2]]}"#, 3);
        let v = t.get(&[2, 1].into()).unwrap();
        assert_eq!(v.value, BigInt::from(1));
        assert_eq!(v.modulus, BigInt::zero());
        assert_eq!(t.first_nonvanishing, MinWeight::Exact(2));
        let w: Vec<_> = t.witnesses().iter().map(|v| v.index.clone()).collect();
        assert_eq!(
            w,
            vec![MultiIndex::from([1u16, 2]), MultiIndex::from([2u16, 1])]
        );
        // lk = 1 makes every mixed weight-3 invariant ambiguous mod 1
        for v in t.weight(3) {
            let idx = v.index.indices();
            if idx.contains(&1) && idx.contains(&2) {
                assert_eq!(v.modulus, BigInt::from(1));
            }
            assert!(v.is_zero());
        }
    }

    #[test]
    fn knots_have_no_invariants() {
        let t = table(r#"{"crossings":[[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#, 5);
        assert!(t.entries().all(MilnorValue::is_zero));
        assert_eq!(t.first_nonvanishing, MinWeight::AtLeast(6));
    }

    #[test]
    fn unlink_has_no_invariants() {
        let t = table(r#"{"crossings":[],"zero_crossing_components":2}"#, 4);
        assert_eq!(t.entries().count(), 4 + 8 + 16);
        assert_eq!(t.first_nonvanishing, MinWeight::AtLeast(5));
        assert!(t.to_json()["first_nonvanishing"].is_null());
    }

    #[test]
    fn argument_checks() {
        let d = parse_pd(r#"{"crossings":[[1,3,2,4],[3,1,4,2]]}"#).unwrap();
        let g = Guards::default();
        assert!(mu_bar(&d, &[1].into(), 4, &g).is_err());
        assert!(mu_bar(&d, &[1, 3].into(), 4, &g).is_err());
        assert!(mu_bar(&d, &[1, 2, 1, 2, 1].into(), 4, &g).is_err());
        assert!(milnor_table(&d, 1, &g).is_err());
        assert_eq!(
            mu_bar(&d, &[1, 2].into(), 4, &g).unwrap().value,
            BigInt::from(1)
        );
    }
}
