//! Left-greedy normal form `Δ^inf · A_1 ⋯ A_r`.
//!
//! A simple braid is stored as the permutation it induces: `perm[p]` is the
//! final position of the strand starting at position `p` (0-based). With
//! this convention `perm(A·B) = perm(B) ∘ perm(A)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidWord;
use crate::error::{Error, Result};

pub type Perm = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GarsideNF {
    strands: usize,
    inf: i64,
    factors: Vec<Perm>,
}

fn identity_perm(k: usize) -> Perm {
    (0..k as u8).collect()
}

fn delta_perm(k: usize) -> Perm {
    (0..k as u8).rev().collect()
}

fn is_identity_perm(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x as usize)
}

fn is_delta_perm(p: &[u8]) -> bool {
    let k = p.len();
    p.iter().enumerate().all(|(i, &x)| x as usize == k - 1 - i)
}

fn inverse_perm(p: &[u8]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// `Δ⁻¹ A Δ`
fn tau(p: &[u8]) -> Perm {
    let k = p.len();
    (0..k).map(|i| (k - 1) as u8 - p[k - 1 - i]).collect()
}

/// Generators `i` (1-based) that `A` can start with.
fn starts_with(p: &[u8], i: usize) -> bool {
    p[i - 1] > p[i]
}

/// Generators `i` (1-based) that `A` can end with.
fn ends_with(p: &[u8], i: usize) -> bool {
    let inv = inverse_perm(p);
    inv[i - 1] > inv[i]
}

/// Positive word of a simple braid, by bubble sort of the strand order.
fn simple_word(p: &[u8]) -> Vec<i32> {
    // positions[q] = strand currently at position q, sorted by final position
    let mut at: Vec<u8> = identity_perm(p.len());
    let mut word = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for q in 1..p.len() {
            if p[at[q - 1] as usize] > p[at[q] as usize] {
                at.swap(q - 1, q);
                word.push(q as i32);
                changed = true;
            }
        }
    }
    word
}

impl GarsideNF {
    pub fn identity(strands: usize) -> Self {
        GarsideNF { strands, inf: 0, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Power of `Δ`.
    pub fn infimum(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[Perm] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    fn push_factor(&mut self, p: Perm) {
        self.factors.push(p);
        self.normalize();
    }

    fn normalize(&mut self) {
        loop {
            let mut changed = false;
            for j in (0..self.factors.len().saturating_sub(1)).rev() {
                let (left, right) = self.factors.split_at_mut(j + 1);
                let (a, b) = (&mut left[j], &mut right[0]);
                let mut moved = true;
                while moved {
                    moved = false;
                    for i in 1..self.strands {
                        if starts_with(b, i) && !ends_with(a, i) {
                            // a := a σ_i, b := σ_i⁻¹ b
                            for x in a.iter_mut() {
                                if *x as usize == i - 1 {
                                    *x = i as u8;
                                } else if *x as usize == i {
                                    *x = (i - 1) as u8;
                                }
                            }
                            b.swap(i - 1, i);
                            moved = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let lead = self.factors.iter().take_while(|f| is_delta_perm(f)).count();
        if lead > 0 {
            self.factors.drain(..lead);
            self.inf += lead as i64;
        }
        while self.factors.last().is_some_and(|f| is_identity_perm(f)) {
            self.factors.pop();
        }
    }

    /// Right multiplication by `σ_i^{±1}`.
    pub fn mul_generator(&mut self, letter: i32) {
        let k = self.strands;
        let i = letter.unsigned_abs() as usize;
        debug_assert!(i >= 1 && i < k);
        let mut s: Perm = identity_perm(k);
        if letter > 0 {
            s.swap(i - 1, i);
            self.push_factor(s);
        } else {
            // σ_i⁻¹ = Δ⁻¹ τ(σ_i⁻¹ Δ), and Z Δ⁻¹ = Δ⁻¹ τ(Z)
            self.inf -= 1;
            for f in &mut self.factors {
                *f = tau(f);
            }
            let x: Perm = (0..k)
                .map(|p| {
                    let q = k - 1 - p;
                    (if q == i - 1 { i } else if q == i { i - 1 } else { q }) as u8
                })
                .collect();
            self.push_factor(x);
        }
    }

    pub fn to_word(&self) -> BraidWord {
        let k = self.strands;
        let delta = simple_word(&delta_perm(k));
        let mut letters = Vec::new();
        for _ in 0..self.inf.max(0) {
            letters.extend_from_slice(&delta);
        }
        for _ in 0..(-self.inf).max(0) {
            letters.extend(delta.iter().rev().map(|&l| -l));
        }
        for f in &self.factors {
            letters.extend(simple_word(f));
        }
        BraidWord::new(k, letters).expect("letters in range")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut out = self.clone();
        for &l in other.to_word().letters() {
            out.mul_generator(l);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        normal_form(&self.to_word().inverse())
    }

    /// Permutation induced on the strands.
    pub fn permutation(&self) -> Perm {
        let k = self.strands;
        let mut p = identity_perm(k);
        if self.inf.rem_euclid(2) == 1 {
            p = delta_perm(k);
        }
        for f in &self.factors {
            p = p.iter().map(|&x| f[x as usize]).collect();
        }
        p
    }

    pub fn exponent_sum(&self) -> i64 {
        let k = self.strands as i64;
        let delta_len = k * (k - 1) / 2;
        self.inf * delta_len + self.factors.iter().map(|f| simple_word(f).len() as i64).sum::<i64>()
    }

    /// Shape test for conjugates of a single generator: exponent sum 1 and
    /// a transposition on the strands. Necessary, not sufficient.
    pub fn is_band_generator(&self) -> bool {
        if self.exponent_sum() != 1 {
            return false;
        }
        let p = self.permutation();
        let moved: Vec<usize> = (0..p.len()).filter(|&i| p[i] as usize != i).collect();
        moved.len() == 2 && p[moved[0]] as usize == moved[1]
    }
}

impl fmt::Display for GarsideNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for p in &self.factors {
            let w: Vec<String> = simple_word(p).iter().map(|l| l.to_string()).collect();
            write!(f, " [{}]", w.join(" "))?;
        }
        Ok(())
    }
}

pub fn normal_form(w: &BraidWord) -> GarsideNF {
    let mut nf = GarsideNF::identity(w.strands());
    for &l in w.letters() {
        nf.mul_generator(l);
    }
    nf
}

pub fn is_identity(w: &BraidWord) -> bool {
    normal_form(w).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nf(k: usize, s: &str) -> GarsideNF {
        normal_form(&BraidWord::parse(k, s).unwrap())
    }

    #[test]
    fn artin_relations() {
        assert_eq!(nf(3, "1 2 1"), nf(3, "2 1 2"));
        assert_eq!(nf(4, "1 3"), nf(4, "3 1"));
        assert_ne!(nf(3, "1 2"), nf(3, "2 1"));
        assert!(nf(3, "1 -1").is_identity());
        assert!(!nf(3, "1").is_identity());
    }

    #[test]
    fn half_twist_squared() {
        let d2 = nf(3, "1 2 1 2 1 2");
        assert_eq!(d2.infimum(), 2);
        assert!(d2.factors().is_empty());
        for g in ["1", "2"] {
            assert_eq!(d2.mul(&nf(3, g)).unwrap(), nf(3, g).mul(&d2).unwrap());
        }
        let d = nf(3, "1 2 1");
        assert_eq!((d.infimum(), d.factors().len()), (1, 0));
        assert_ne!(d.mul(&nf(3, "1")).unwrap(), nf(3, "1").mul(&d).unwrap());
    }

    #[test]
    fn commutator_is_nontrivial() {
        assert!(!nf(3, "1 2 -1 -2").is_identity());
    }

    #[test]
    fn negative_letters() {
        let x = nf(3, "-1");
        assert_eq!(x.infimum(), -1);
        // Δ⁻¹ followed by the two-letter simple σ_2 σ_1
        assert_eq!(x.to_word().len(), 5);
        assert_eq!(normal_form(&x.to_word()), x);
        assert!(x.mul(&nf(3, "1")).unwrap().is_identity());
    }

    #[test]
    fn band_generators() {
        let a13 = nf(3, "-1 2 1");
        assert!(a13.is_band_generator());
        assert_eq!(a13, nf(3, "2 1 -2"));
        assert!(!nf(3, "1 2").is_band_generator());
        assert!(nf(3, "1 1 -1 -1 1 1 -1").is_band_generator());
        assert!(!nf(3, "1 1 1").is_band_generator());
    }

    fn word(k: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        let g = (k - 1) as i32;
        prop::collection::vec(prop_oneof![1..=g, -g..=-1], 0..=max_len)
            .prop_map(move |l| BraidWord::new(k, l).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(w in (2usize..6).prop_flat_map(|k| word(k, 60))) {
            prop_assert!(is_identity(&w.concat(&w.inverse()).unwrap()));
            prop_assert!(is_identity(&w.inverse().concat(&w).unwrap()));
        }

        #[test]
        fn normal_form_is_idempotent(w in (2usize..6).prop_flat_map(|k| word(k, 40))) {
            let a = normal_form(&w);
            prop_assert_eq!(normal_form(&a.to_word()), a.clone());
            for pair in a.factors().windows(2) {
                for i in 1..w.strands() {
                    prop_assert!(!starts_with(&pair[1], i) || ends_with(&pair[0], i));
                }
            }
            prop_assert!(a.factors().iter().all(|f| !is_identity_perm(f) && !is_delta_perm(f)));
        }

        #[test]
        fn associativity((a, b, c) in (2usize..5).prop_flat_map(|k| (word(k, 12), word(k, 12), word(k, 12)))) {
            let (x, y, z) = (normal_form(&a), normal_form(&b), normal_form(&c));
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        }
    }
}
