//! Graded vector spaces with named bases, and Koszul sign bookkeeping.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn is_odd(degree: i64) -> bool {
    degree.rem_euclid(2) == 1
}

/// `(-1)^{ab}` as a parity flag: true when the sign is negative.
pub fn koszul_parity(a: i64, b: i64) -> bool {
    is_odd(a) && is_odd(b)
}

/// Sign of rearranging homogeneous elements.
///
/// `perm[i]` names the original position of the element that ends up at
/// position `i`; `degrees[j]` is the degree of the element originally at
/// position `j`. Every transposed pair of odd elements contributes a factor
/// of -1.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<i32> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch { expected: degrees.len(), found: perm.len() });
    }
    let mut seen = alloc::vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::Precondition(alloc::format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let mut negative = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && koszul_parity(degrees[perm[i]], degrees[perm[j]]) {
                negative = !negative;
            }
        }
    }
    Ok(if negative { -1 } else { 1 })
}

/// Finite-dimensional rational vector space per integer degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    degrees: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the basis at `degree`. Labels must be unique within the degree.
    pub fn with_degree(mut self, degree: i64, labels: Vec<String>) -> Result<Self> {
        self.set_degree(degree, labels)?;
        Ok(self)
    }

    pub fn set_degree(&mut self, degree: i64, labels: Vec<String>) -> Result<()> {
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateName(w[0].clone()));
        }
        self.degrees.insert(degree, labels);
        Ok(())
    }

    /// A space with anonymous basis labels `prefix{degree}_{i}`.
    pub fn from_dims(prefix: &str, dims: &BTreeMap<i64, usize>) -> Self {
        let degrees = dims
            .iter()
            .map(|(&k, &n)| (k, (0..n).map(|i| alloc::format!("{prefix}{k}_{i}")).collect()))
            .collect();
        GradedSpace { degrees }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, Vec::len)
    }

    pub fn basis(&self, degree: i64) -> &[String] {
        self.degrees.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Degrees carrying an explicit (possibly empty) basis.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.keys().next_back().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &[String])> {
        self.degrees.iter().map(|(&k, v)| (k, v.as_slice()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]).unwrap(), 1);
        assert_eq!(koszul_sign(&[2, 0, 1], &[1, 1, 1]).unwrap(), 1);
        assert!(koszul_sign(&[0, 1], &[1]).is_err());
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn koszul_sign_is_multiplicative() {
        // Applying q then p: the element at final slot i came from q[p[i]].
        for n in 0..=5usize {
            let perms = permutations(n);
            for mask in 0..(1u32 << n) {
                let degrees: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64 + 2).collect();
                for p in &perms {
                    for q in &perms {
                        let composed: Vec<usize> = p.iter().map(|&i| q[i]).collect();
                        let moved: Vec<i64> = q.iter().map(|&i| degrees[i]).collect();
                        let lhs = koszul_sign(&composed, &degrees).unwrap();
                        let rhs = koszul_sign(q, &degrees).unwrap() * koszul_sign(p, &moved).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = GradedSpace::new().with_degree(0, alloc::vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, Error::DuplicateName("a".into()));
    }
}
