use crate::lattice::FinAbGroup;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Degree-indexed family of finitely generated abelian groups; only
/// nontrivial degrees are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedAbGroup {
    groups: BTreeMap<i64, FinAbGroup>,
}

impl GradedAbGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, degree: i64) -> FinAbGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// Adds `g` as a direct summand in `degree`.
    pub fn add(&mut self, degree: i64, g: &FinAbGroup) {
        if g.is_trivial() {
            return;
        }
        let cur = self.groups.remove(&degree).unwrap_or_default();
        self.groups.insert(degree, cur.direct_sum(g));
    }

    pub fn set(&mut self, degree: i64, g: FinAbGroup) {
        if g.is_trivial() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, g);
        }
    }

    pub fn direct_sum(&self, other: &GradedAbGroup) -> GradedAbGroup {
        let mut out = self.clone();
        for (&d, g) in &other.groups {
            out.add(d, g);
        }
        out
    }

    pub fn shift(&self, by: i64) -> GradedAbGroup {
        GradedAbGroup { groups: self.groups.iter().map(|(&d, g)| (d + by, g.clone())).collect() }
    }

    pub fn truncate(&self, max_degree: i64) -> GradedAbGroup {
        GradedAbGroup { groups: self.groups.iter().filter(|(&d, _)| d <= max_degree).map(|(&d, g)| (d, g.clone())).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &FinAbGroup)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.is_free())
    }

    /// Free ranks by degree (rational Poincaré series).
    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().filter(|(_, g)| g.free_rank() > 0).map(|(&d, g)| (d, g.free_rank())).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.free_rank()).sum()
    }

    /// Degrees carrying torsion, with their torsion parts.
    pub fn torsion_degrees(&self) -> Vec<i64> {
        self.groups.iter().filter(|(_, g)| !g.is_free()).map(|(&d, _)| d).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|(&d, g)| if d % 2 == 0 { g.free_rank() as i64 } else { -(g.free_rank() as i64) }).sum()
    }

    /// Degreewise torsion count for an elementary abelian `p`-group family,
    /// i.e. the F_p dimensions when every group is `(Z/p)^k`.
    pub fn elementary_dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().map(|(&d, g)| (d, g.free_rank() + g.torsion().len())).collect()
    }
}

impl fmt::Display for GradedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.groups.iter().map(|(d, g)| format!("H{d}={g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for GradedAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.groups.len()))?;
        for (d, g) in &self.groups {
            map.serialize_entry(&d.to_string(), g)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for GradedAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, FinAbGroup> = BTreeMap::deserialize(d)?;
        let mut out = GradedAbGroup::new();
        for (k, g) in raw {
            let deg: i64 = k.parse().map_err(serde::de::Error::custom)?;
            out.set(deg, g);
        }
        Ok(out)
    }
}
