use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite group given by its multiplication table; axioms are checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(order: usize, mul: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if mul.len() != order * order || mul.iter().any(|&v| v >= order) {
            return Err(Error::InvalidGroup("multiplication table has wrong shape or range".into()));
        }
        let m = |a: usize, b: usize| mul[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| m(a, b) == identity && m(b, a) == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { order, mul, identity, inverse })
    }

    pub fn from_nested(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("ragged multiplication table".into()));
        }
        Self::new(n, rows.concat())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::new(n, mul).expect("cyclic group")
    }

    /// Symmetric group on `k` points; elements are permutations in lexicographic order,
    /// multiplied as `a·b = a ∘ b`.
    pub fn symmetric(k: usize) -> Self {
        Self::from_permutations(&Permutation::all(k))
    }

    /// Dihedral group of the regular `k`-gon, order `2k`: element `r^i s^j` has index `i + k·j`.
    pub fn dihedral(k: usize) -> Self {
        let n = 2 * k;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (i1, j1) = (a % k, a / k);
                let (i2, j2) = (b % k, b / k);
                // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1+j2)
                let i = if j1 == 0 { (i1 + i2) % k } else { (i1 + k - i2) % k };
                mul[a * n + b] = i + k * ((j1 + j2) % 2);
            }
        }
        Self::new(n, mul).expect("dihedral group")
    }

    /// Direct product; `(a,b)` has index `a·|h| + b`.
    pub fn direct_product(g: &Self, h: &Self) -> Self {
        let (m, k) = (g.order, h.order);
        let n = m * k;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = g.mul(a / k, b / k) * k + h.mul(a % k, b % k);
            }
        }
        Self::new(n, mul).expect("direct product")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`; index `2·u + s` for unit `u ∈ {1,i,j,k}` and sign bit `s`.
    pub fn quaternion() -> Self {
        // unit products: (unit, sign flip)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let mut mul = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, flip) = UNIT[a / 2][b / 2];
                mul[a * 8 + b] = 2 * u + ((a % 2) ^ (b % 2) ^ flip);
            }
        }
        Self::new(8, mul).expect("quaternion group")
    }

    /// One representative of every isomorphism type of group of order at most 8.
    pub fn all_small() -> Vec<(String, Self)> {
        let z = Self::cyclic;
        vec![
            ("1".into(), Self::trivial()),
            ("Z2".into(), z(2)),
            ("Z3".into(), z(3)),
            ("Z4".into(), z(4)),
            ("Z2xZ2".into(), Self::direct_product(&z(2), &z(2))),
            ("Z5".into(), z(5)),
            ("Z6".into(), z(6)),
            ("S3".into(), Self::symmetric(3)),
            ("Z7".into(), z(7)),
            ("Z8".into(), z(8)),
            ("Z4xZ2".into(), Self::direct_product(&z(4), &z(2))),
            ("Z2xZ2xZ2".into(), Self::direct_product(&Self::direct_product(&z(2), &z(2)), &z(2))),
            ("D4".into(), Self::dihedral(4)),
            ("Q8".into(), Self::quaternion()),
        ]
    }

    pub fn from_permutations(elems: &[Permutation]) -> Self {
        let n = elems.len();
        let mut mul = vec![0; n * n];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                let c = pa.compose(pb);
                mul[a * n + b] = elems.iter().position(|p| *p == c).expect("closed under composition");
            }
        }
        Self::new(n, mul).expect("permutation group")
    }

    /// Short names used on the command line: `trivial`, `zN`, `sN`, `dN` (dihedral of order 2N), `q8`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        if lower == "trivial" {
            return Ok(Self::trivial());
        }
        let (kind, num) = lower.split_at(1);
        let k: usize = num.parse().map_err(|_| Error::Parse(format!("unknown group {name:?}")))?;
        match kind {
            "z" | "c" if k >= 1 => Ok(Self::cyclic(k)),
            "q" if k == 8 => Ok(Self::quaternion()),
            "s" if (1..=5).contains(&k) => Ok(Self::symmetric(k)),
            "d" if k >= 1 => Ok(Self::dihedral(k)),
            _ => Err(Error::Parse(format!("unknown group {name:?}"))),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn to_nested(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        assert_eq!(FiniteGroup::cyclic(5).order(), 5);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert!(FiniteGroup::dihedral(2).is_abelian());
        assert_eq!(FiniteGroup::trivial().order(), 1);
        let q8 = FiniteGroup::quaternion();
        assert!(!q8.is_abelian());
        // exactly one element of order 2 in Q8
        let e = q8.identity();
        assert_eq!((0..8).filter(|&a| a != e && q8.mul(a, a) == e).count(), 1);
        assert_eq!(FiniteGroup::all_small().len(), 14);
    }

    #[test]
    fn rejects_non_groups() {
        // constant multiplication has no identity
        assert!(FiniteGroup::new(2, vec![0, 0, 0, 0]).is_err());
        // a Latin square that is not associative
        let q = vec![0, 2, 1, 2, 1, 0, 1, 0, 2];
        assert!(FiniteGroup::new(3, q).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(FiniteGroup::by_name("s3").unwrap(), FiniteGroup::symmetric(3));
        assert_eq!(FiniteGroup::by_name("Z4").unwrap().order(), 4);
        assert_eq!(FiniteGroup::by_name("d4").unwrap().order(), 8);
        assert_eq!(FiniteGroup::by_name("q8").unwrap(), FiniteGroup::quaternion());
        assert!(FiniteGroup::by_name("x9").is_err());
    }
}
