use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::{is_quandle, is_shelf};
use crate::table::{BinaryTable, TernaryTable};

/// `x*y = T(x,y,y)`; rejects tables that are not ternary quandles.
pub fn associated_quandle(t: &TernaryTable) -> Result<BinaryTable> {
    if !is_quandle(t) {
        return Err(Error::Precondition("associated quandle needs a ternary quandle".into()));
    }
    Ok(associated_operation(t))
}

/// `x*y = T(x,y,y)` without checking any axiom.
pub fn associated_operation(t: &TernaryTable) -> BinaryTable {
    BinaryTable::from_fn(t.order(), |x, y| t.get(x, y, y)).expect("in range")
}

/// `T(x,y,z) = (x*y)*z`; rejects binary tables that are not quandles.
pub fn induced_from_binary(b: &BinaryTable) -> Result<TernaryTable> {
    if !b.is_quandle() {
        return Err(Error::Precondition("induced ternary operation needs a binary quandle".into()));
    }
    TernaryTable::from_fn(b.order(), |x, y, z| b.get(b.get(x, y), z))
}

/// `T(x,y,z) = tx + sy + (1−t−s)z mod n`.
pub fn affine_ternary(n: usize, t: usize, s: usize) -> TernaryTable {
    assert!(n >= 1, "modulus must be positive");
    let (t, s) = (t % n, s % n);
    let u = (1 + 2 * n - t - s) % n;
    TernaryTable::from_fn(n, |x, y, z| (t * x + s * y + u * z) % n).expect("residues in range")
}

/// `T(x,y,z) = x y⁻¹ z`.
pub fn heap(g: &FiniteGroup) -> TernaryTable {
    TernaryTable::from_fn(g.order(), |x, y, z| g.mul(g.mul(x, g.inv(y)), z)).expect("group elements in range")
}

/// Binary Alexander quandle `a*b = t a + (1−t) b mod n`.
pub fn alexander(n: usize, t: usize) -> BinaryTable {
    let t = t % n;
    let u = (1 + n - t) % n;
    BinaryTable::from_fn(n, |a, b| (t * a + u * b) % n).expect("residues in range")
}

/// Dihedral quandle `a*b = 2b − a mod n`.
pub fn dihedral_quandle(n: usize) -> BinaryTable {
    BinaryTable::from_fn(n, |a, b| (2 * b + n - a) % n).expect("residues in range")
}

/// Returns `Ok(())` when `t` is a ternary shelf.
pub fn require_shelf(t: &TernaryTable) -> Result<()> {
    if is_shelf(t) {
        Ok(())
    } else {
        Err(Error::Precondition("input is not a ternary shelf".into()))
    }
}
