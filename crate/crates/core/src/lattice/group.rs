//! Finitely generated abelian groups `Z^r + Z/d1 + ... + Z/dk` with `d1 | d2 | ...`.

use crate::int::{gcd, int, lcm, Int};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `(Z/p)^count`
    pub fn elementary(p: u64, count: usize) -> Self {
        Self::new(0, vec![Int::from(p); count])
    }

    /// Builds a group from arbitrary cyclic orders; 0 and 1 entries are
    /// rejected and ignored respectively, and the rest is normalized into a
    /// divisibility chain.
    pub fn new(free_rank: usize, orders: Vec<Int>) -> Self {
        let mut d: Vec<Int> = orders.into_iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
        assert!(d.iter().all(|x| !x.is_zero()), "torsion order 0");
        normalize_chain(&mut d);
        FinAbGroup { free_rank, torsion: d.into_iter().filter(|x| !x.is_one()).collect() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        FinAbGroup::new(self.free_rank + other.free_rank, t)
    }

    /// Cyclic decomposition including free summands as order 0.
    fn cyclic_parts(&self) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.free_rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn tensor(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut free = 0;
        let mut tors = Vec::new();
        for a in self.cyclic_parts() {
            for b in other.cyclic_parts() {
                let g = gcd(&a, &b);
                if g.is_zero() {
                    free += 1;
                } else {
                    tors.push(g);
                }
            }
        }
        FinAbGroup::new(free, tors)
    }

    pub fn tor(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut tors = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                tors.push(gcd(a, b));
            }
        }
        FinAbGroup::new(0, tors)
    }

    /// Dimension of `self (x) F_p`.
    pub fn dim_mod_p(&self, p: u64) -> usize {
        let p = int(p as i64);
        self.free_rank + self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }
}

/// Rewrites a list of positive orders into an equivalent divisibility chain.
fn normalize_chain(d: &mut [Int]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(&d[i], &d[j]);
            let l = lcm(&d[i], &d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Small(u64),
    Big(String),
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tors: Vec<OrderRepr> = self
            .torsion
            .iter()
            .map(|t| t.to_u64().map(OrderRepr::Small).unwrap_or_else(|| OrderRepr::Big(t.to_string())))
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("rank", &self.free_rank)?;
        map.serialize_entry("torsion", &tors)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            #[serde(default)]
            torsion: Vec<OrderRepr>,
        }
        let raw = Raw::deserialize(d)?;
        let mut orders = Vec::new();
        for t in raw.torsion {
            let v = match t {
                OrderRepr::Small(x) => Int::from(x),
                OrderRepr::Big(s) => s.parse::<Int>().map_err(de::Error::custom)?,
            };
            if v <= Int::one() {
                return Err(de::Error::custom("torsion orders must be at least 2"));
            }
            orders.push(v);
        }
        Ok(FinAbGroup::new(raw.rank, orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_chain() {
        let g = FinAbGroup::new(1, vec![int(2), int(3), int(1)]);
        assert_eq!(g.torsion(), &[int(6)]);
        let g = FinAbGroup::new(0, vec![int(4), int(2), int(6)]);
        assert_eq!(g.torsion(), &[int(2), int(2), int(12)]);
    }

    #[test]
    fn tensor_and_tor() {
        let z2 = FinAbGroup::new(0, vec![int(2)]);
        let z4 = FinAbGroup::new(0, vec![int(4)]);
        let z = FinAbGroup::free(1);
        assert_eq!(z2.tensor(&z4), z2);
        assert_eq!(z.tensor(&z4), z4);
        assert_eq!(z2.tor(&z4), z2);
        assert!(z.tor(&z4).is_trivial());
    }

    #[test]
    fn json_roundtrip() {
        let g = FinAbGroup::new(2, vec![int(2), int(4)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rank":2,"torsion":[2,4]}"#);
        let back: FinAbGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let huge = FinAbGroup::new(0, vec!["100000000000000000000000".parse().unwrap()]);
        let back: FinAbGroup = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }

    #[test]
    fn mod_p_dimension() {
        let g = FinAbGroup::new(1, vec![int(2), int(6)]);
        assert_eq!(g.dim_mod_p(2), 3);
        assert_eq!(g.dim_mod_p(3), 2);
        assert_eq!(g.dim_mod_p(5), 1);
    }
}
