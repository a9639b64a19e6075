//! Groups that frames and connections can take values in.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::braid::{normal_form, BraidWord, GarsideNF};

/// Elements carry their own context (strand count, rank), so the identity
/// is obtained from an existing element.
pub trait Group: Clone + Debug + Display + PartialEq + Eq + Hash + Send + Sync {
    fn one(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_one(&self) -> bool;

    /// `g⁻¹ · self · g`
    fn conj(&self, g: &Self) -> Self {
        g.inv().mul(self).mul(g)
    }
}

impl Group for GarsideNF {
    fn one(&self) -> Self {
        GarsideNF::identity(self.strands())
    }

    fn mul(&self, other: &Self) -> Self {
        GarsideNF::mul(self, other).expect("frames share a strand count")
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn is_one(&self) -> bool {
        self.is_identity()
    }
}

/// Freely reduced word; letter `i` is generator `i`, `-i` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out = FreeWord(Vec::new());
        for l in letters {
            debug_assert!(l != 0);
            out.push(l);
        }
        out
    }

    pub fn generator(i: i32) -> Self {
        FreeWord(vec![i])
    }

    fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Substitute `images[i - 1]` for generator `i`.
    pub fn evaluate<G: Group>(&self, images: &[G]) -> Option<G> {
        let one = images.first()?.one();
        self.0.iter().try_fold(one, |acc, &l| {
            let g = images.get(l.unsigned_abs() as usize - 1)?;
            Some(if l > 0 { acc.mul(g) } else { acc.mul(&g.inv()) })
        })
    }

    pub fn to_braid(&self, strands: usize) -> crate::Result<BraidWord> {
        BraidWord::new(strands, self.0.clone())
    }
}

impl std::fmt::Display for FreeWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Group for FreeWord {
    fn one(&self) -> Self {
        FreeWord(Vec::new())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }

    fn inv(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&l| -l).collect())
    }

    fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

/// Standard generators `σ_1, …, σ_n` of `B_{n+1}` in normal form.
pub fn artin_generators(n: usize) -> Vec<GarsideNF> {
    (1..=n as i32).map(|i| normal_form(&BraidWord::new(n + 1, vec![i]).expect("in range"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = FreeWord::new([1, 2, -2, -1, 3]);
        assert_eq!(w.letters(), &[3]);
        let a = FreeWord::new([1, 2]);
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(FreeWord::generator(2).conj(&FreeWord::generator(1)).letters(), &[-1, 2, 1]);
    }

    #[test]
    fn evaluation_in_braids() {
        let s = artin_generators(2);
        let w = FreeWord::new([1, 2, 1, -2, -1, -2]);
        assert!(w.evaluate(&s).unwrap().is_one());
        assert!(!FreeWord::new([1, 2]).evaluate(&s).unwrap().is_one());
        assert!(FreeWord::new([3]).evaluate(&s).is_none());
    }
}
