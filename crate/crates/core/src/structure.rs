use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::table::{NaryTable, TernaryTable};

/// Axiom flags of a ternary table together with the first violation found for each axiom.
///
/// `is_quandle ⇒ is_rack ⇒ is_shelf` by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub is_shelf: bool,
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_medial: bool,
    pub pointed_elements: Vec<usize>,
    /// `(x,y,z,u,v)` with `T(T(x,y,z),u,v) ≠ T(T(x,u,v),T(y,u,v),T(z,u,v))`.
    pub distributivity_witness: Option<[usize; 5]>,
    /// `(a,b)` with `x ↦ T(x,a,b)` not injective.
    pub rack_witness: Option<[usize; 2]>,
    /// `x` with `T(x,x,x) ≠ x`.
    pub idempotence_witness: Option<usize>,
    /// `(a,b,c,d,e,f,g,h,k)` violating the medial identity.
    pub medial_witness: Option<[usize; 9]>,
}

pub fn classify_structure(t: &TernaryTable) -> StructureReport {
    let distributivity_witness = distributivity_witness(t);
    let rack_witness = rack_witness(t);
    let idempotence_witness = idempotence_witness(t);
    let medial_witness = medial_witness(t);
    let is_shelf = distributivity_witness.is_none();
    let is_rack = is_shelf && rack_witness.is_none();
    let is_quandle = is_rack && idempotence_witness.is_none();
    StructureReport {
        order: t.order(),
        is_shelf,
        is_rack,
        is_quandle,
        is_medial: medial_witness.is_none(),
        pointed_elements: pointed_elements(t),
        distributivity_witness,
        rack_witness,
        idempotence_witness,
        medial_witness,
    }
}

pub fn distributivity_witness(t: &TernaryTable) -> Option<[usize; 5]> {
    let n = t.order();
    for u in 0..n {
        for v in 0..n {
            // column c[w] = T(w,u,v)
            let c: Vec<usize> = (0..n).map(|w| t.get(w, u, v)).collect();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if c[t.get(x, y, z)] != t.get(c[x], c[y], c[z]) {
                            return Some([x, y, z, u, v]);
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn rack_witness(t: &TernaryTable) -> Option<[usize; 2]> {
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            let mut seen = vec![false; n];
            for x in 0..n {
                let v = t.get(x, a, b);
                if std::mem::replace(&mut seen[v], true) {
                    return Some([a, b]);
                }
            }
        }
    }
    None
}

pub fn idempotence_witness(t: &TernaryTable) -> Option<usize> {
    (0..t.order()).find(|&x| t.get(x, x, x) != x)
}

pub fn is_shelf(t: &TernaryTable) -> bool {
    distributivity_witness(t).is_none()
}

pub fn is_rack(t: &TernaryTable) -> bool {
    is_shelf(t) && rack_witness(t).is_none()
}

pub fn is_quandle(t: &TernaryTable) -> bool {
    idempotence_witness(t).is_none() && rack_witness(t).is_none() && is_shelf(t)
}

pub fn is_medial(t: &TernaryTable) -> bool {
    medial_witness(t).is_none()
}

/// Elements `e` with `T(x,e,e) = x` and `T(e,x,y) = e` for all `x,y`.
pub fn pointed_elements(t: &TernaryTable) -> Vec<usize> {
    let n = t.order();
    (0..n)
        .filter(|&e| (0..n).all(|x| t.get(x, e, e) == x && (0..n).all(|y| t.get(e, x, y) == e)))
        .collect()
}

struct Interner {
    ids: HashMap<Vec<u16>, u32>,
    items: Vec<Vec<u16>>,
}

impl Interner {
    fn new() -> Self {
        Self { ids: HashMap::new(), items: Vec::new() }
    }

    fn intern(&mut self, v: Vec<u16>) -> u32 {
        if let Some(&id) = self.ids.get(&v) {
            return id;
        }
        let id = self.items.len() as u32;
        self.items.push(v.clone());
        self.ids.insert(v, id);
        id
    }
}

/// Exhaustive check of `T(T(a,b,c),T(d,e,f),T(g,h,k)) = T(T(a,d,g),T(b,e,h),T(c,f,k))`.
///
/// Writing `L_{p,q} = T(p,q,·)`, the identity for fixed `(a..f)` reads
/// `L_{r1,r2} ∘ T = T ∘ (L_{a,d} × L_{b,e} × L_{c,f})` with `r1 = T(a,b,c)`, `r2 = T(d,e,f)`,
/// so it depends only on the four partial maps. Each distinct quadruple is verified once,
/// slice by slice in `g`, against memoized binary maps.
pub fn medial_witness(t: &TernaryTable) -> Option<[usize; 9]> {
    let n = t.order();
    let mut unary = Interner::new();
    let uid: Vec<u32> = (0..n * n)
        .map(|pq| unary.intern((0..n).map(|w| t.get(pq / n, pq % n, w) as u16).collect()))
        .collect();
    let umaps = unary.items.clone();
    let u = umaps.len();

    let mut binary = Interner::new();
    // N(ψ,g): (h,k) ↦ ψ(T(g,h,k));  M(v,B,C): (h,k) ↦ T(v, B h, C k)
    let mut n_memo: HashMap<(u32, u16), u32> = HashMap::new();
    let mut m_memo: HashMap<(u16, u32, u32), u32> = HashMap::new();

    let dense = (u as u64).pow(4) <= 1 << 24;
    let mut seen_bits = if dense { vec![0u64; ((u as u64).pow(4) as usize).div_ceil(64)] } else { Vec::new() };
    let mut seen_set: HashSet<(u32, u32, u32, u32)> = HashSet::new();

    let r1s: Vec<usize> = (0..n * n * n).map(|i| t.get(i / (n * n), (i / n) % n, i % n)).collect();

    for a in 0..n {
        for d in 0..n {
            let ka = uid[a * n + d];
            for b in 0..n {
                for e in 0..n {
                    let kb = uid[b * n + e];
                    for c in 0..n {
                        let r1 = r1s[(a * n + b) * n + c];
                        for f in 0..n {
                            let kc = uid[c * n + f];
                            let r2 = r1s[(d * n + e) * n + f];
                            let kp = uid[r1 * n + r2];
                            let fresh = if dense {
                                let idx = (((kp as usize * u + ka as usize) * u + kb as usize) * u) + kc as usize;
                                let (w, bit) = (idx / 64, 1u64 << (idx % 64));
                                let fresh = seen_bits[w] & bit == 0;
                                seen_bits[w] |= bit;
                                fresh
                            } else {
                                seen_set.insert((kp, ka, kb, kc))
                            };
                            if !fresh {
                                continue;
                            }
                            let psi = &umaps[kp as usize];
                            let (ma, mb, mc) = (&umaps[ka as usize], &umaps[kb as usize], &umaps[kc as usize]);
                            for g in 0..n {
                                let nid = *n_memo.entry((kp, g as u16)).or_insert_with(|| {
                                    binary.intern(
                                        (0..n * n).map(|hk| psi[t.get(g, hk / n, hk % n)]).collect(),
                                    )
                                });
                                let v = ma[g];
                                let mid = *m_memo.entry((v, kb, kc)).or_insert_with(|| {
                                    binary.intern(
                                        (0..n * n)
                                            .map(|hk| t.get(v as usize, mb[hk / n] as usize, mc[hk % n] as usize) as u16)
                                            .collect(),
                                    )
                                });
                                if nid != mid {
                                    for h in 0..n {
                                        for k in 0..n {
                                            let lhs = t.get(r1, r2, t.get(g, h, k));
                                            let rhs = t.get(t.get(a, d, g), t.get(b, e, h), t.get(c, f, k));
                                            if lhs != rhs {
                                                return Some([a, b, c, d, e, f, g, h, k]);
                                            }
                                        }
                                    }
                                    unreachable!("memoized slices differ but no violating entry");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// First tuple `(x_1..x_k, u_1..u_{k-1})` violating k-ary right distributivity.
pub fn nary_distributivity_witness(t: &NaryTable) -> Option<Vec<usize>> {
    let k = t.arity();
    let n = t.order();
    let total = n.pow((2 * k - 1) as u32);
    let mut args = vec![0usize; 2 * k - 1];
    let mut inner = vec![0usize; k];
    let mut outer = vec![0usize; k];
    for idx in 0..total {
        let mut r = idx;
        for slot in (0..2 * k - 1).rev() {
            args[slot] = r % n;
            r /= n;
        }
        let (xs, us) = args.split_at(k);
        outer[0] = t.get(xs);
        outer[1..].copy_from_slice(us);
        let lhs = t.get(&outer);
        for (i, &x) in xs.iter().enumerate() {
            inner[0] = x;
            inner[1..].copy_from_slice(us);
            outer[i] = t.get(&inner);
        }
        if lhs != t.get(&outer) {
            return Some(args.clone());
        }
    }
    None
}

pub fn nary_is_distributive(t: &NaryTable) -> bool {
    nary_distributivity_witness(t).is_none()
}
