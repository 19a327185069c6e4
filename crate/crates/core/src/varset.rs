//! Variable universes and subsets of them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of variables. Every decider enumerates `2^n` subsets.
pub const MAX_VARS: usize = 20;

/// An ordered list of distinct variable names `X_1, ..., X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarUniverse {
    names: Vec<String>,
}

impl VarUniverse {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(names, MAX_VARS)
    }

    /// Like [`VarUniverse::new`] with a lower cap. Caps above [`MAX_VARS`] are clamped.
    pub fn with_cap<I, S>(names: I, cap: usize) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let cap = cap.min(MAX_VARS);
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidUniverse("no variables".into()));
        }
        if names.len() > cap {
            return Err(Error::InvalidUniverse(format!(
                "{} variables exceed the cap of {cap}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidUniverse("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidUniverse(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        Ok(Arc::new(VarUniverse { names }))
    }

    /// Universe `X1, ..., Xn`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| format!("X{i}")))
    }

    /// Universe of single letters `A, B, C, ...` (n ≤ 20).
    pub fn letters(n: usize) -> Result<Arc<Self>> {
        Self::new((0..n).map(|i| ((b'A' + i as u8) as char).to_string()))
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Number of subsets, `2^n`.
    pub fn num_subsets(&self) -> usize {
        1usize << self.n()
    }

    pub fn full(&self) -> VarSet {
        VarSet::full(self.n())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<VarSet> {
        self.index_of(name)
            .map(VarSet::singleton)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Builds a set from names. An empty iterator yields the empty set.
    pub fn set<I, S>(&self, names: I) -> Result<VarSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .try_fold(VarSet::EMPTY, |acc, s| Ok(acc | self.var(s.as_ref())?))
    }

    /// Parses a set written as `A,B,C` or `AB` is not accepted; `0` or empty is ∅.
    pub fn parse_set(&self, text: &str) -> Result<VarSet> {
        let t = text.trim();
        if t.is_empty() || t == "0" {
            return Ok(VarSet::EMPTY);
        }
        self.set(t.split(',').map(str::trim))
    }

    /// Errors unless every member of `set` indexes a variable of this universe.
    pub fn check(&self, set: VarSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                set: set.bits(),
                n: self.n(),
            })
        }
    }

    /// Comma-separated names, `0` for the empty set.
    pub fn fmt_set(&self, set: VarSet) -> String {
        if set.is_empty() {
            return "0".to_string();
        }
        set.iter()
            .map(|i| self.names.get(i).map_or("?", String::as_str))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Names juxtaposed, as in `ABC`; `∅` for the empty set.
    pub fn fmt_set_compact(&self, set: VarSet) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        let all_short = set.iter().all(|i| self.names[i].chars().count() == 1);
        let sep = if all_short { "" } else { "," };
        set.iter()
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A subset of `[n]`, bit `i` standing for `names[i]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VarSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < 32);
        VarSet(1 << i)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARS);
        VarSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter()
            .fold(VarSet::EMPTY, |acc, i| acc | VarSet::singleton(i))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn minus(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Self {
        self | VarSet::singleton(i)
    }

    pub fn without(self, i: usize) -> Self {
        self.minus(VarSet::singleton(i))
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(VarSet(cur))
        })
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl std::ops::BitOr for VarSet {
    type Output = VarSet;
    fn bitor(self, rhs: VarSet) -> VarSet {
        self.union(rhs)
    }
}

impl std::ops::BitOrAssign for VarSet {
    fn bitor_assign(&mut self, rhs: VarSet) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for VarSet {
    type Output = VarSet;
    fn bitand(self, rhs: VarSet) -> VarSet {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for VarSet {
    type Output = VarSet;
    fn sub(self, rhs: VarSet) -> VarSet {
        self.minus(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_rejects_bad_names() {
        assert!(VarUniverse::new(Vec::<String>::new()).is_err());
        assert!(VarUniverse::new(["A", "A"]).is_err());
        assert!(VarUniverse::new(["A", ""]).is_err());
        assert!(VarUniverse::numbered(21).is_err());
        assert!(VarUniverse::numbered(20).is_ok());
        assert!(VarUniverse::with_cap(["A", "B", "C"], 2).is_err());
    }

    #[test]
    fn set_parsing_and_printing() {
        let u = VarUniverse::new(["A", "B", "C"]).unwrap();
        let s = u.parse_set("A, C").unwrap();
        assert_eq!(s, VarSet::from_indices([0, 2]));
        assert_eq!(u.fmt_set(s), "A,C");
        assert_eq!(u.parse_set("0").unwrap(), VarSet::EMPTY);
        assert_eq!(u.fmt_set(VarSet::EMPTY), "0");
        assert_eq!(u.parse_set("D"), Err(Error::UnknownVariable("D".into())));
        assert!(u.check(VarSet::from_bits(0b1000)).is_err());
    }

    #[test]
    fn subsets_enumerates_all() {
        let s = VarSet::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(subs[0], VarSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
        assert_eq!(VarSet::EMPTY.subsets().count(), 1);
    }
}
