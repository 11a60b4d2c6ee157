use crate::error::{Error, Result};

/// A bijection of `{0..n-1}` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All permutations of `{0..n-1}` in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Disjoint-cycle text with 1-indexed points; the identity is `(1)`.
    pub fn to_cycles(&self) -> String {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                out.push_str(&(i + 1).to_string());
                i = self.images[i];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("(1)");
        }
        out
    }

    /// Parses disjoint-cycle text such as `(12)(34)` or `(1)`; each cycle `(a b c)` maps a→b→c→a.
    /// Points are single digits unless separated by spaces or commas.
    pub fn from_cycles(text: &str, n: usize) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cycle expression".into()));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        let mut rest = s;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {text:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
            };
            let inner = &body[..close];
            rest = body[close + 1..].trim_start();
            let points: Vec<usize> = if inner.contains([' ', ',']) {
                inner
                    .split([' ', ','])
                    .filter(|p| !p.is_empty())
                    .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {p:?}"))))
                    .collect::<Result<_>>()?
            } else {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad point {c:?}"))))
                    .collect::<Result<_>>()?
            };
            if points.is_empty() {
                return Err(Error::Parse(format!("empty cycle in {text:?}")));
            }
            for &p in &points {
                if p == 0 || p > n {
                    return Err(Error::Parse(format!("point {p} outside 1..{n}")));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated in {text:?}")));
                }
                touched[p - 1] = true;
            }
            if points.len() > 1 {
                for (k, &p) in points.iter().enumerate() {
                    images[p - 1] = points[(k + 1) % points.len()] - 1;
                }
            }
        }
        Self::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_counts_and_order() {
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::all(3)[0].is_identity());
    }

    #[test]
    fn cycles_round_trip() {
        let p = Permutation::from_cycles("(12)", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
        let q = Permutation::from_cycles("(123)", 3).unwrap();
        assert_eq!(q.images(), &[1, 2, 0]);
        assert_eq!(q.to_cycles(), "(123)");
        assert_eq!(Permutation::identity(3).to_cycles(), "(1)");
        for p in Permutation::all(4) {
            assert_eq!(Permutation::from_cycles(&p.to_cycles(), 4).unwrap(), p);
        }
    }

    #[test]
    fn cycles_reject_garbage() {
        assert!(Permutation::from_cycles("(14)", 3).is_err());
        assert!(Permutation::from_cycles("(12)(23)", 3).is_err());
        assert!(Permutation::from_cycles("12", 3).is_err());
        assert!(Permutation::from_cycles("(1", 3).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        for p in Permutation::all(4) {
            assert!(p.compose(&p.inverse()).is_identity());
        }
    }
}
