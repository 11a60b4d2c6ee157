use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::associated_operation;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::structure::is_quandle;
use crate::table::{BinaryTable, TernaryTable};

/// Largest order accepted by [`enumerate_ternary_quandles`].
pub const MAX_ENUMERATION_ORDER: usize = 4;

/// Returns `σ` with `σ(a(x,y,z)) = b(σx,σy,σz)` for all `x,y,z`, if one exists.
pub fn are_isomorphic(a: &TernaryTable, b: &TernaryTable) -> Result<Option<Permutation>> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let n = a.order();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(iso_search(a, b, 0, &mut sigma, &mut used).then(|| Permutation::new(sigma).expect("bijection")))
}

fn iso_search(a: &TernaryTable, b: &TernaryTable, k: usize, sigma: &mut [usize], used: &mut [bool]) -> bool {
    let n = a.order();
    if k == n {
        return true;
    }
    for img in 0..n {
        if used[img] {
            continue;
        }
        sigma[k] = img;
        used[img] = true;
        if iso_consistent(a, b, k, sigma, used) && iso_search(a, b, k + 1, sigma, used) {
            return true;
        }
        used[img] = false;
    }
    sigma[k] = usize::MAX;
    false
}

/// Checks every triple among `0..=k` that involves `k`.
fn iso_consistent(a: &TernaryTable, b: &TernaryTable, k: usize, sigma: &[usize], used: &[bool]) -> bool {
    for x in 0..=k {
        for y in 0..=k {
            for z in 0..=k {
                if x != k && y != k && z != k {
                    continue;
                }
                let target = b.get(sigma[x], sigma[y], sigma[z]);
                let v = a.get(x, y, z);
                if v <= k {
                    if sigma[v] != target {
                        return false;
                    }
                } else if used[target] {
                    // v is unassigned, so its image must still be free
                    return false;
                }
            }
        }
    }
    true
}

/// Lexicographically least flattened table over all relabelings.
pub fn canonical_form(t: &TernaryTable) -> TernaryTable {
    canonical_with_perm(t).0
}

/// Canonical form together with one relabeling that produces it.
pub fn canonical_with_perm(t: &TernaryTable) -> (TernaryTable, Permutation) {
    let mut best: Option<(TernaryTable, Permutation)> = None;
    for p in Permutation::all(t.order()) {
        let r = t.relabel_images(p.images());
        if best.as_ref().is_none_or(|(b, _)| r.raw() < b.raw()) {
            best = Some((r, p));
        }
    }
    best.expect("at least one permutation")
}

pub fn canonical_binary(b: &BinaryTable) -> BinaryTable {
    Permutation::all(b.order())
        .iter()
        .map(|p| b.relabel(p).expect("same order"))
        .min_by(|x, y| x.entries().cmp(&y.entries()))
        .expect("at least one permutation")
}

/// Relabelings `σ` with `σ·t = t`.
pub fn automorphisms(t: &TernaryTable) -> Vec<Permutation> {
    Permutation::all(t.order()).into_iter().filter(|p| t.relabel_images(p.images()) == *t).collect()
}

/// All distinct relabelings of `t`.
pub fn orbit(t: &TernaryTable) -> Vec<TernaryTable> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in Permutation::all(t.order()) {
        let r = t.relabel_images(p.images());
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out.sort();
    out
}

/// One isomorphism class of ternary quandles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub representative: TernaryTable,
    /// Number of labeled tables in the orbit, `n!/|Aut|`.
    pub class_size: usize,
    /// Canonical form of the associated quandle `x*y = T(x,y,y)`.
    pub associated: BinaryTable,
    /// Labeled tables in the orbit whose associated quandle equals `associated` exactly.
    pub labeled_with_fixed_associated: usize,
}

impl IsoClass {
    pub fn from_table(t: &TernaryTable) -> Self {
        let representative = canonical_form(t);
        let associated = canonical_binary(&associated_operation(&representative));
        let orbit = orbit(&representative);
        let labeled_with_fixed_associated =
            orbit.iter().filter(|r| associated_operation(r) == associated).count();
        Self { class_size: orbit.len(), representative, associated, labeled_with_fixed_associated }
    }
}

/// Class counts for one associated quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedGroup {
    pub associated: BinaryTable,
    pub iso_classes: usize,
    pub labeled_with_fixed_associated: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    /// Drop `T(x,x,x) = x`, enumerating ternary racks instead of quandles.
    pub no_idempotence: bool,
}

/// All isomorphism classes of ternary quandles of order `n`, sorted by associated quandle and then
/// by representative.
pub fn enumerate_ternary_quandles(n: usize) -> Result<Vec<IsoClass>> {
    enumerate_with(n, EnumerationOptions::default())
}

pub fn enumerate_with(n: usize, opts: EnumerationOptions) -> Result<Vec<IsoClass>> {
    if n == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::ResourceLimit(format!("enumeration is limited to order {MAX_ENUMERATION_ORDER}")));
    }
    let canon: HashSet<TernaryTable> = enumerate_labeled(n, opts).par_iter().map(canonical_form).collect();
    let mut classes: Vec<IsoClass> = canon.par_iter().map(IsoClass::from_table).collect();
    classes.sort_by(|a, b| {
        (a.associated.entries(), a.representative.raw()).cmp(&(b.associated.entries(), b.representative.raw()))
    });
    Ok(classes)
}

/// Every labeled table passing the rack axioms, distributivity and (unless disabled) idempotence.
///
/// Columns `R_{y,z} = T(·,y,z)` are assigned as permutations in the order `(y,z) = (0,0),(0,1),…`;
/// after each assignment every distributivity instance whose columns are all known is checked.
pub fn enumerate_labeled(n: usize, opts: EnumerationOptions) -> Vec<TernaryTable> {
    let perms: Vec<Vec<u16>> =
        Permutation::all(n).into_iter().map(|p| p.images().iter().map(|&i| i as u16).collect()).collect();
    let first: Vec<&Vec<u16>> = perms.iter().filter(|p| opts.no_idempotence || p[0] == 0).collect();
    first
        .par_iter()
        .flat_map_iter(|p0| {
            let mut cols: Vec<Option<&[u16]>> = vec![None; n * n];
            cols[0] = Some(p0.as_slice());
            let mut out = Vec::new();
            if columns_consistent(n, &cols) {
                extend_columns(n, 1, &perms, opts, &mut cols, &mut out);
            }
            out
        })
        .collect()
}

fn extend_columns<'a>(
    n: usize,
    next: usize,
    perms: &'a [Vec<u16>],
    opts: EnumerationOptions,
    cols: &mut Vec<Option<&'a [u16]>>,
    out: &mut Vec<TernaryTable>,
) {
    if next == n * n {
        let mut entries = vec![0u16; n * n * n];
        for (yz, col) in cols.iter().enumerate() {
            let col = col.expect("all columns assigned");
            for x in 0..n {
                entries[x * n * n + yz] = col[x];
            }
        }
        out.push(TernaryTable::from_raw(n, entries));
        return;
    }
    let (y, z) = (next / n, next % n);
    for p in perms {
        if !opts.no_idempotence && y == z && p[y] as usize != y {
            continue;
        }
        cols[next] = Some(p.as_slice());
        if columns_consistent(n, cols) {
            extend_columns(n, next + 1, perms, opts, cols, out);
        }
    }
    cols[next] = None;
}

/// Distributivity on every instance whose needed columns are assigned.
fn columns_consistent(n: usize, cols: &[Option<&[u16]>]) -> bool {
    for u in 0..n {
        for v in 0..n {
            let Some(cuv) = cols[u * n + v] else { continue };
            for y in 0..n {
                for z in 0..n {
                    let Some(cyz) = cols[y * n + z] else { continue };
                    let (yy, zz) = (cuv[y] as usize, cuv[z] as usize);
                    let Some(outer) = cols[yy * n + zz] else { continue };
                    for x in 0..n {
                        let lhs = cuv[cyz[x] as usize];
                        let rhs = outer[cuv[x] as usize];
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Class counts grouped by associated quandle, in the order of first appearance.
pub fn group_by_associated(classes: &[IsoClass]) -> Vec<AssociatedGroup> {
    let mut groups: Vec<AssociatedGroup> = Vec::new();
    for c in classes {
        match groups.iter_mut().find(|g| g.associated == c.associated) {
            Some(g) => {
                g.iso_classes += 1;
                g.labeled_with_fixed_associated += c.labeled_with_fixed_associated;
            }
            None => groups.push(AssociatedGroup {
                associated: c.associated.clone(),
                iso_classes: 1,
                labeled_with_fixed_associated: c.labeled_with_fixed_associated,
            }),
        }
    }
    groups
}

/// Names of tables that fall into the same isomorphism class, one group per class with two or
/// more members, in input order.
pub fn collision_report(tables: &[(String, TernaryTable)]) -> Vec<Vec<String>> {
    let mut by_canon: BTreeMap<TernaryTable, Vec<(usize, String)>> = BTreeMap::new();
    for (i, (name, t)) in tables.iter().enumerate() {
        by_canon.entry(canonical_form(t)).or_default().push((i, name.clone()));
    }
    let mut groups: Vec<Vec<(usize, String)>> = by_canon.into_values().filter(|g| g.len() > 1).collect();
    groups.sort();
    groups.into_iter().map(|g| g.into_iter().map(|(_, n)| n).collect()).collect()
}

/// A table written as `z`-blocks of disjoint-cycle permutations, one per `y`, each acting on `x`.
/// Points are 1-indexed in the text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperNotation {
    pub order: usize,
    /// `blocks[z][y]` is the cycle text of `x ↦ T(x,y,z)`.
    pub blocks: Vec<Vec<String>>,
}

impl fmt::Display for PaperNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.join(",")).collect();
        f.write_str(&blocks.join("; "))
    }
}

impl FromStr for PaperNotation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks: Vec<Vec<String>> = s
            .split(';')
            .map(|b| b.split(',').map(|c| c.trim().to_string()).collect::<Vec<_>>())
            .collect();
        let order = blocks.len();
        if blocks.iter().any(|b| b.len() != order || b.iter().any(|c| c.is_empty())) {
            return Err(Error::Parse(format!("expected {order} blocks of {order} permutations in {s:?}")));
        }
        Ok(Self { order, blocks })
    }
}

pub fn to_paper_notation(t: &TernaryTable) -> Result<PaperNotation> {
    let n = t.order();
    let mut blocks = Vec::with_capacity(n);
    for z in 0..n {
        let mut block = Vec::with_capacity(n);
        for y in 0..n {
            let p = Permutation::new((0..n).map(|x| t.get(x, y, z)).collect())
                .map_err(|_| Error::InvalidPermutation(format!("column (y={},z={}) is not a bijection", y + 1, z + 1)))?;
            block.push(p.to_cycles());
        }
        blocks.push(block);
    }
    Ok(PaperNotation { order: n, blocks })
}

pub fn from_paper_notation(p: &PaperNotation) -> Result<TernaryTable> {
    let n = p.order;
    if p.blocks.len() != n || p.blocks.iter().any(|b| b.len() != n) {
        return Err(Error::Parse(format!("expected {n} blocks of {n} permutations")));
    }
    let mut entries = vec![0usize; n * n * n];
    for (z, block) in p.blocks.iter().enumerate() {
        for (y, text) in block.iter().enumerate() {
            let perm = Permutation::from_cycles(text, n)?;
            for x in 0..n {
                entries[(x * n + y) * n + z] = perm.apply(x);
            }
        }
    }
    TernaryTable::new(n, entries)
}

pub fn parse_paper_table(text: &str) -> Result<TernaryTable> {
    from_paper_notation(&text.parse()?)
}

/// Checks that every table in `tables` is a quandle; returns the names that fail.
pub fn non_quandles<'a>(tables: &'a [(String, TernaryTable)]) -> Vec<&'a str> {
    tables.iter().filter(|(_, t)| !is_quandle(t)).map(|(n, _)| n.as_str()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::heap;
    use crate::group::FiniteGroup;

    fn t21() -> TernaryTable {
        parse_paper_table("(1),(12),(13); (12),(1),(23); (13),(23),(1)").unwrap()
    }

    #[test]
    fn order_two_lemma_cases() {
        let i = parse_paper_table("(1),(1); (1),(1)").unwrap();
        let ii = parse_paper_table("(1),(12); (12),(1)").unwrap();
        assert_eq!(are_isomorphic(&i, &ii).unwrap(), None);
        assert!(are_isomorphic(&heap(&FiniteGroup::cyclic(2)), &ii).unwrap().is_some());
        assert!(are_isomorphic(&ii, &ii).unwrap().unwrap().is_identity());
    }

    #[test]
    fn t21_cayley_block() {
        let t = t21();
        // z = 1 block, read as columns over y
        assert_eq!((0..3).map(|x| t.get(x, 0, 0) + 1).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!((0..3).map(|x| t.get(x, 1, 0) + 1).collect::<Vec<_>>(), vec![2, 1, 3]);
        assert_eq!((0..3).map(|x| t.get(x, 2, 0) + 1).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert_eq!(to_paper_notation(&t).unwrap().to_string(), "(1),(12),(13); (12),(1),(23); (13),(23),(1)");
    }

    #[test]
    fn notation_of_projection() {
        let p = to_paper_notation(&TernaryTable::projection(3)).unwrap();
        assert_eq!(p.to_string(), "(1),(1),(1); (1),(1),(1); (1),(1),(1)");
    }

    #[test]
    fn notation_errors() {
        assert!(parse_paper_table("(1),(12); (12)").is_err());
        assert!(parse_paper_table("(1),(13); (12),(1)").is_err());
        assert!(parse_paper_table("(1),(1 2; (1),(1)").is_err());
        let not_rack = TernaryTable::from_fn(2, |_, y, _| y).unwrap();
        assert!(to_paper_notation(&not_rack).is_err());
    }

    #[test]
    fn canonical_orbit_constant_on_t21() {
        let t = t21();
        let c = canonical_form(&t);
        for p in Permutation::all(3) {
            assert_eq!(canonical_form(&t.relabel(&p).unwrap()), c);
        }
        assert_eq!(canonical_form(&TernaryTable::projection(3)), TernaryTable::projection(3));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_ternary_quandles(1).unwrap().len(), 1);
        let two = enumerate_ternary_quandles(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(enumerate_ternary_quandles(5).is_err());
    }

    #[test]
    fn class_size_is_orbit_size() {
        for c in enumerate_ternary_quandles(3).unwrap() {
            assert_eq!(c.class_size * automorphisms(&c.representative).len(), 6);
            assert_eq!(canonical_form(&c.representative), c.representative);
            assert!(is_quandle(&c.representative));
        }
    }
}
