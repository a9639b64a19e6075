use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Word in the Artin generators of `B_k`: `i` is `σ_i`, `-i` is its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::InvalidBraid(format!("generator {l} is out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    /// `σ_i`, 1-based.
    pub fn generator(strands: usize, i: i32) -> Result<Self> {
        Self::new(strands, vec![i])
    }

    /// Whitespace-separated signed generator indices.
    pub fn parse(strands: usize, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| Error::InvalidBraid(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// `g⁻¹ · w · g`
    pub fn conjugate(g: &Self, w: &Self) -> Result<Self> {
        g.inverse().concat(w)?.concat(g)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = BraidWord::parse(4, "1 2  -1").unwrap();
        assert_eq!(w.letters(), &[1, 2, -1]);
        assert_eq!(w.to_string(), "1 2 -1");
        assert_eq!(w.inverse().letters(), &[1, -2, -1]);
        assert!(BraidWord::parse(3, "3").is_err());
        assert!(BraidWord::parse(3, "0").is_err());
        assert!(BraidWord::parse(3, "x").is_err());
    }

    #[test]
    fn conjugate_shape() {
        let g = BraidWord::parse(3, "1").unwrap();
        let w = BraidWord::parse(3, "2").unwrap();
        assert_eq!(BraidWord::conjugate(&g, &w).unwrap().letters(), &[-1, 2, 1]);
        assert!(matches!(
            BraidWord::conjugate(&g, &BraidWord::identity(4)),
            Err(Error::StrandMismatch(3, 4))
        ));
    }
}
