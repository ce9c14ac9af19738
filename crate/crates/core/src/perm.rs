//! Permutations of edge labels.

use crate::{Error, Result};

/// A permutation of `1..=m`, stored in one-line form: `images[k-1] = sigma(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// The identity on `1..=m`.
    pub fn identity(m: usize) -> Self {
        Self {
            images: (1..=m as u32).collect(),
        }
    }

    /// Builds a permutation from one-line images over `1..=m`, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            if v == 0 || v as usize > m {
                return Err(Error::Invalid(format!(
                    "permutation image {v} out of range 1..={m}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::Invalid(format!("duplicate permutation image {v}")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `sigma(k)` for 1-based `k`.
    pub fn image(&self, k: u32) -> u32 {
        self.images[k as usize - 1]
    }

    /// One-line images, 1-based values.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = k as u32 + 1;
        }
        Self { images: inv }
    }

    /// Composition `(self . other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&k| self.image(k)).collect(),
        })
    }

    /// Sign of the permutation, `+1` or `-1`, via cycle decomposition.
    pub fn sign(&self) -> i8 {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut transpositions = 0usize;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] as usize - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Calls `f` with every permutation of `0..m` in one-line form together with
/// its sign. Uses Heap's algorithm; each step is a single transposition, so
/// the sign is maintained incrementally.
pub fn for_each_permutation<F: FnMut(&[usize], i8)>(m: usize, mut f: F) {
    let mut p: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    let mut sign: i8 = 1;
    f(&p, sign);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            sign = -sign;
            f(&p, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_of_small_permutations() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(Permutation::from_images(vec![2, 1]).unwrap().sign(), -1);
        // (1,3,4,2) has cycle (2 3 4): even.
        assert_eq!(
            Permutation::from_images(vec![1, 3, 4, 2]).unwrap().sign(),
            1
        );
    }

    #[test]
    fn sign_equals_inverse_sign() {
        let p = Permutation::from_images(vec![3, 1, 4, 2, 5]).unwrap();
        assert_eq!(p.sign(), p.inverse().sign());
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(5));
    }

    #[test]
    fn bad_images_rejected() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![3, 1]).is_err());
    }

    #[test]
    fn heap_enumeration_visits_all_with_correct_signs() {
        let mut count = 0usize;
        let mut sign_sum = 0i64;
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(4, |p, s| {
            count += 1;
            sign_sum += s as i64;
            let images: Vec<u32> = p.iter().map(|&i| i as u32 + 1).collect();
            let perm = Permutation::from_images(images).unwrap();
            assert_eq!(perm.sign(), s);
            seen.insert(perm);
        });
        assert_eq!(count, 24);
        assert_eq!(seen.len(), 24);
        assert_eq!(sign_sum, 0);
    }
}
