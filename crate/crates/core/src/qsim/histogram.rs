use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::BitString;

/// Measurement outcomes aggregated over shots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotHistogram {
    width: usize,
    shots: u64,
    counts: BTreeMap<BitString, u64>,
}

impl ShotHistogram {
    pub fn new(width: usize) -> Self {
        ShotHistogram {
            width,
            shots: 0,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<I>(width: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BitString, u64)>,
    {
        let mut h = ShotHistogram::new(width);
        for (outcome, n) in counts {
            h.record_n(outcome, n)?;
        }
        Ok(h)
    }

    pub fn record(&mut self, outcome: BitString) -> Result<()> {
        self.record_n(outcome, 1)
    }

    pub fn record_n(&mut self, outcome: BitString, n: u64) -> Result<()> {
        if outcome.len() != self.width {
            return Err(Error::contract(format!(
                "outcome {outcome} has width {}, histogram expects {}",
                outcome.len(),
                self.width
            )));
        }
        if n > 0 {
            *self.counts.entry(outcome).or_insert(0) += n;
            self.shots += n;
        }
        Ok(())
    }

    /// Order-independent union of two histograms of the same width.
    pub fn merge(&mut self, other: &ShotHistogram) -> Result<()> {
        for (k, &v) in &other.counts {
            self.record_n(k.clone(), v)?;
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn is_empty(&self) -> bool {
        self.shots == 0
    }

    pub fn num_outcomes(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, outcome: &BitString) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    /// Outcomes in ascending bitstring order.
    pub fn iter(&self) -> impl Iterator<Item = (&BitString, u64)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    /// Most frequent outcome; ties go to the lexicographically smallest.
    pub fn mode(&self) -> Option<(&BitString, u64)> {
        // ascending iteration + strict `>` keeps the smallest among ties
        let mut best: Option<(&BitString, u64)> = None;
        for (k, &v) in &self.counts {
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((k, v));
            }
        }
        best
    }
}

impl Serialize for ShotHistogram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.counts.len()))?;
        for (k, v) in &self.counts {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn mode_and_ties() {
        let h = ShotHistogram::from_counts(3, [(bs("101"), 900), (bs("001"), 122)]).unwrap();
        assert_eq!(h.mode().unwrap().0, &bs("101"));
        assert_eq!(h.shots(), 1022);

        let t = ShotHistogram::from_counts(2, [(bs("10"), 511), (bs("01"), 511)]).unwrap();
        assert_eq!(t.mode().unwrap().0, &bs("01"));
    }

    #[test]
    fn width_checked() {
        let mut h = ShotHistogram::new(2);
        assert!(h.record(bs("101")).is_err());
    }

    #[test]
    fn merge_adds_counts() {
        let mut a = ShotHistogram::from_counts(1, [(bs("0"), 3)]).unwrap();
        let b = ShotHistogram::from_counts(1, [(bs("0"), 1), (bs("1"), 2)]).unwrap();
        a.merge(&b).unwrap();
        assert_eq!(a.shots(), 6);
        assert_eq!(a.count(&bs("0")), 4);
    }

    #[test]
    fn serializes_as_string_map() {
        let h = ShotHistogram::from_counts(2, [(bs("11"), 5)]).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"11":5}"#);
    }
}
