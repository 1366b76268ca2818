use std::fmt;

use num_rational::BigRational;

use crate::space::{for_each_word, Clopen, SpaceSpec};

use super::ApproxError;

/// Which block of 2n+1 equal symbols plays the role of E at lamplighter level n.
/// `Ones` is the default; `Zeros` is its image under the symbol swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BlockConvention {
    #[default]
    Ones,
    Zeros,
}

impl BlockConvention {
    pub(crate) fn symbol(self) -> u8 {
        match self {
            BlockConvention::Ones => 1,
            BlockConvention::Zeros => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    LamplighterLevel { n: usize, convention: BlockConvention },
    OdometerLevel(usize),
    Custom,
}

/// A nonempty clopen E ≠ X together with an ordered partition of X∖E.
#[derive(Clone, PartialEq, Eq)]
pub struct PartitionScheme {
    e: Clopen,
    parts: Vec<Clopen>,
    provenance: Provenance,
}

impl PartitionScheme {
    /// Validated custom scheme.
    pub fn new(e: Clopen, parts: Vec<Clopen>) -> Result<Self, ApproxError> {
        Self::checked(e, parts, Provenance::Custom)
    }

    fn checked(e: Clopen, parts: Vec<Clopen>, provenance: Provenance) -> Result<Self, ApproxError> {
        let bad = |m: &str| Err(ApproxError::InvalidScheme(m.to_string()));
        if e.is_empty() {
            return bad("E is empty");
        }
        if e.is_full() {
            return bad("E is the whole space");
        }
        let space = e.space();
        let mut union = Clopen::empty(space);
        for (i, z) in parts.iter().enumerate() {
            if z.space() != space {
                return bad("parts live on another space");
            }
            if z.is_empty() {
                return Err(ApproxError::InvalidScheme(format!("part {i} is empty")));
            }
            if !union.is_disjoint(z)? {
                return Err(ApproxError::InvalidScheme(format!("part {i} overlaps an earlier part")));
            }
            union = union.union(z)?;
        }
        if union != e.complement() {
            return bad("parts do not cover the complement of E exactly");
        }
        Ok(PartitionScheme { e, parts, provenance })
    }

    pub fn lamplighter(n: usize) -> Self {
        Self::lamplighter_with(n, BlockConvention::Ones)
    }

    /// E = the block of 2n+1 equal symbols on [−n, n]; parts = the other cylinders there, lexicographically.
    pub fn lamplighter_with(n: usize, convention: BlockConvention) -> Self {
        let space = SpaceSpec::binary_shift();
        let m = 2 * n + 1;
        let start = -(n as i64);
        let e_word = vec![convention.symbol(); m];
        let e = Clopen::cylinder(space, start, &e_word).unwrap();
        let mut parts = Vec::new();
        for_each_word(m, 2, |w| {
            if w != e_word.as_slice() {
                parts.push(Clopen::cylinder(space, start, w).unwrap());
            }
        });
        PartitionScheme {
            e,
            parts,
            provenance: Provenance::LamplighterLevel { n, convention },
        }
    }

    /// E = [0⋯0] on the first n coordinates; parts = the other cylinders there, lexicographically.
    pub fn odometer(n: usize) -> Result<Self, ApproxError> {
        if n == 0 {
            return Err(ApproxError::InvalidScheme("odometer level must be positive".into()));
        }
        let space = SpaceSpec::odometer();
        let e = Clopen::cylinder(space, 1, &vec![0; n]).unwrap();
        let mut parts = Vec::new();
        for_each_word(n, 2, |w| {
            if w.iter().any(|&b| b != 0) {
                parts.push(Clopen::cylinder(space, 1, w).unwrap());
            }
        });
        Ok(PartitionScheme {
            e,
            parts,
            provenance: Provenance::OdometerLevel(n),
        })
    }

    pub fn space(&self) -> SpaceSpec {
        self.e.space()
    }

    pub fn e(&self) -> &Clopen {
        &self.e
    }

    pub fn parts(&self) -> &[Clopen] {
        &self.parts
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn mu_e(&self) -> BigRational {
        self.e.measure()
    }

    /// Level for lamplighter and odometer schemes.
    pub fn level(&self) -> Option<usize> {
        match self.provenance {
            Provenance::LamplighterLevel { n, .. } | Provenance::OdometerLevel(n) => Some(n),
            Provenance::Custom => None,
        }
    }

    /// Whether `finer` refines this scheme: E' ⊆ E and each part of `finer` lies in E or in one part here.
    pub fn is_refined_by(&self, finer: &PartitionScheme) -> Result<bool, ApproxError> {
        if !self.e.contains(&finer.e)? {
            return Ok(false);
        }
        for z in &finer.parts {
            if self.e.contains(z)? {
                continue;
            }
            let mut found = false;
            for y in &self.parts {
                if y.contains(z)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for PartitionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartitionScheme({:?}, E={}, {} parts)",
            self.provenance,
            self.e,
            self.parts.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn lamplighter_levels() {
        let s0 = PartitionScheme::lamplighter(0);
        assert_eq!(s0.e(), &Clopen::cylinder(SpaceSpec::binary_shift(), 0, &[1]).unwrap());
        assert_eq!(
            s0.parts(),
            &[Clopen::cylinder(SpaceSpec::binary_shift(), 0, &[0]).unwrap()]
        );
        for n in 0..4 {
            let s = PartitionScheme::lamplighter(n);
            assert_eq!(s.parts().len(), (1 << (2 * n + 1)) - 1);
            assert_eq!(s.mu_e(), BigRational::new(1.into(), (1u64 << (2 * n + 1)).into()));
            let again = PartitionScheme::new(s.e().clone(), s.parts().to_vec()).unwrap();
            assert_eq!(again.parts(), s.parts());
        }
        let z = PartitionScheme::lamplighter_with(0, BlockConvention::Zeros);
        assert_eq!(z.e(), &Clopen::cylinder(SpaceSpec::binary_shift(), 0, &[0]).unwrap());
    }

    #[test]
    fn odometer_levels() {
        let s1 = PartitionScheme::odometer(1).unwrap();
        assert_eq!(s1.parts().len(), 1);
        let s2 = PartitionScheme::odometer(2).unwrap();
        assert_eq!(s2.parts().len(), 3);
        for n in 1..5 {
            let s = PartitionScheme::odometer(n).unwrap();
            let mut translates: Vec<Clopen> = (1..(1i64 << n)).map(|l| s.e().image(l)).collect();
            let mut parts = s.parts().to_vec();
            translates.sort_by_key(|c| c.to_string());
            parts.sort_by_key(|c| c.to_string());
            assert_eq!(translates, parts);
        }
        assert!(PartitionScheme::odometer(0).is_err());
    }

    #[test]
    fn validation() {
        let sp = SpaceSpec::binary_shift();
        let e = Clopen::cylinder(sp, 0, &[1]).unwrap();
        let z = Clopen::cylinder(sp, 0, &[0]).unwrap();
        assert!(PartitionScheme::new(e.clone(), vec![z.clone()]).is_ok());
        assert!(PartitionScheme::new(e.clone(), vec![]).is_err());
        assert!(PartitionScheme::new(e.clone(), vec![z.clone(), z.clone()]).is_err());
        assert!(PartitionScheme::new(Clopen::full(sp), vec![]).is_err());
        let z1 = Clopen::cylinder(sp, 0, &[0, 1]).unwrap();
        assert!(PartitionScheme::new(e, vec![z1]).is_err());
        assert!(PartitionScheme::lamplighter(0).mu_e() < BigRational::one());
    }

    #[test]
    fn nested_levels() {
        for n in 0..3 {
            assert!(PartitionScheme::lamplighter(n)
                .is_refined_by(&PartitionScheme::lamplighter(n + 1))
                .unwrap());
        }
        for n in 1..4 {
            assert!(PartitionScheme::odometer(n)
                .unwrap()
                .is_refined_by(&PartitionScheme::odometer(n + 1).unwrap())
                .unwrap());
        }
        assert!(!PartitionScheme::lamplighter(1)
            .is_refined_by(&PartitionScheme::lamplighter(0))
            .unwrap());
    }
}
