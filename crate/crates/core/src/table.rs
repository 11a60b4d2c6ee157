use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Index permutation of nine tensor slots: slot `i` of the output reads slot `RHO[i]`
/// of the input. It transposes a 3x3 grid and is an involution.
pub const RHO: [usize; 9] = [0, 3, 6, 1, 4, 7, 2, 5, 8];

pub fn rho_permute<T: Copy>(v: &[T]) -> Result<[T; 9]> {
    if v.len() != 9 {
        return Err(Error::InvalidTable(format!("rho needs 9 slots, got {}", v.len())));
    }
    Ok(RHO.map(|i| v[i]))
}

/// A total ternary operation on `{0..n-1}`, flattened with index `(x*n + y)*n + z`.
/// Serializes as the nested array `table[x][y][z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<Vec<usize>>>", try_from = "Vec<Vec<Vec<usize>>>")]
pub struct TernaryTable {
    order: usize,
    entries: Vec<u16>,
}

impl TernaryTable {
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if entries.len() != order.pow(3) {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order.pow(3),
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range for order {order}")));
        }
        Ok(Self { order, entries: entries.into_iter().map(|e| e as u16).collect() })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(order.pow(3));
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    entries.push(f(x, y, z));
                }
            }
        }
        Self::new(order, entries)
    }

    pub fn projection(order: usize) -> Self {
        Self::from_fn(order, |x, _, _| x).expect("projection is total")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.order;
        self.entries[(x * n + y) * n + z] as usize
    }

    pub fn entries(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| e as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.entries
    }

    pub(crate) fn from_raw(order: usize, entries: Vec<u16>) -> Self {
        debug_assert_eq!(entries.len(), order.pow(3));
        Self { order, entries }
    }

    /// Returns a copy with the entry at `(x,y,z)` replaced.
    pub fn with_entry(&self, x: usize, y: usize, z: usize, value: usize) -> Result<Self> {
        if value >= self.order || x >= self.order || y >= self.order || z >= self.order {
            return Err(Error::InvalidTable("index or value out of range".into()));
        }
        let mut t = self.clone();
        let n = self.order;
        t.entries[(x * n + y) * n + z] = value as u16;
        Ok(t)
    }

    /// The relabeled table `(σ·t)(x,y,z) = σ(t(σ⁻¹x, σ⁻¹y, σ⁻¹z))`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.order() != self.order {
            return Err(Error::OrderMismatch(sigma.order(), self.order));
        }
        Ok(self.relabel_images(sigma.images()))
    }

    pub(crate) fn relabel_images(&self, s: &[usize]) -> Self {
        let n = self.order;
        let mut entries = vec![0u16; self.entries.len()];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    entries[(s[x] * n + s[y]) * n + s[z]] = s[self.get(x, y, z)] as u16;
                }
            }
        }
        Self { order: n, entries }
    }

    /// Nested `table[x][y][z]` view.
    pub fn to_nested(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.order;
        (0..n).map(|x| (0..n).map(|y| (0..n).map(|z| self.get(x, y, z)).collect()).collect()).collect()
    }

    pub fn from_nested(rows: &[Vec<Vec<usize>>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n.pow(3));
        for plane in rows {
            if plane.len() != n {
                return Err(Error::InvalidTable("ragged table".into()));
            }
            for row in plane {
                if row.len() != n {
                    return Err(Error::InvalidTable("ragged table".into()));
                }
                entries.extend_from_slice(row);
            }
        }
        Self::new(n, entries)
    }
}

impl From<TernaryTable> for Vec<Vec<Vec<usize>>> {
    fn from(t: TernaryTable) -> Self {
        t.to_nested()
    }
}

impl TryFrom<Vec<Vec<Vec<usize>>>> for TernaryTable {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        Self::from_nested(&rows)
    }
}

impl From<BinaryTable> for Vec<Vec<usize>> {
    fn from(t: BinaryTable) -> Self {
        t.to_nested()
    }
}

impl TryFrom<Vec<Vec<usize>>> for BinaryTable {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_nested(&rows)
    }
}

/// A total binary operation on `{0..n-1}`, flattened with index `x*n + y`.
/// Serializes as the nested array `table[x][y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<usize>>", try_from = "Vec<Vec<usize>>")]
pub struct BinaryTable {
    order: usize,
    entries: Vec<u16>,
}

impl BinaryTable {
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range for order {order}")));
        }
        Ok(Self { order, entries: entries.into_iter().map(|e| e as u16).collect() })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let entries = (0..order).flat_map(|x| (0..order).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self::new(order, entries)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y] as usize
    }

    pub fn entries(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| e as usize).collect()
    }

    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.order() != self.order {
            return Err(Error::OrderMismatch(sigma.order(), self.order));
        }
        let s = sigma.images();
        let n = self.order;
        let mut entries = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[s[x] * n + s[y]] = s[self.get(x, y)];
            }
        }
        Self::new(n, entries)
    }

    /// Idempotence, bijective right translations and right self-distributivity.
    pub fn is_quandle(&self) -> bool {
        let n = self.order;
        if (0..n).any(|x| self.get(x, x) != x) {
            return false;
        }
        for y in 0..n {
            let mut seen = vec![false; n];
            for x in 0..n {
                let v = self.get(x, y);
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.get(self.get(x, y), z) != self.get(self.get(x, z), self.get(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_nested(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        (0..n).map(|x| (0..n).map(|y| self.get(x, y)).collect()).collect()
    }

    pub fn from_nested(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable("ragged table".into()));
        }
        Self::new(n, rows.concat())
    }
}

/// A total k-ary operation on `{0..n-1}`, flattened lexicographically (first argument most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaryTable {
    arity: usize,
    order: usize,
    entries: Vec<u16>,
}

impl NaryTable {
    pub fn new(arity: usize, order: usize, entries: Vec<usize>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidTable("arity must be at least 2".into()));
        }
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        let len = order.pow(arity as u32);
        if entries.len() != len {
            return Err(Error::InvalidTable(format!("expected {len} entries, got {}", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range for order {order}")));
        }
        Ok(Self { arity, order, entries: entries.into_iter().map(|e| e as u16).collect() })
    }

    pub fn from_fn(arity: usize, order: usize, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let len = order.pow(arity as u32);
        let mut args = vec![0usize; arity];
        let mut entries = Vec::with_capacity(len);
        for idx in 0..len {
            let mut r = idx;
            for slot in (0..arity).rev() {
                args[slot] = r % order;
                r /= order;
            }
            entries.push(f(&args));
        }
        Self::new(arity, order, entries)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0, |acc, &a| acc * self.order + a);
        self.entries[idx] as usize
    }

    pub fn entries(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| e as usize).collect()
    }
}

impl From<&TernaryTable> for NaryTable {
    fn from(t: &TernaryTable) -> Self {
        Self { arity: 3, order: t.order, entries: t.entries.clone() }
    }
}

impl From<&BinaryTable> for NaryTable {
    fn from(b: &BinaryTable) -> Self {
        Self { arity: 2, order: b.order, entries: b.entries.clone() }
    }
}
