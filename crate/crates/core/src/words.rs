use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::table::TernaryTable;

/// Free-group alphabet, in word order.
pub const ALPHABET: [char; 5] = ['x', 'y', 'z', 'u', 'v'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    symbol: char,
    exp: i8,
}

impl Letter {
    pub fn new(symbol: char, exp: i8) -> Result<Self> {
        if !ALPHABET.contains(&symbol) {
            return Err(Error::Parse(format!("symbol {symbol:?} outside the alphabet")));
        }
        if exp != 1 && exp != -1 {
            return Err(Error::Parse(format!("exponent {exp} is not ±1")));
        }
        Ok(Self { symbol, exp })
    }

    pub fn symbol(&self) -> char {
        self.symbol
    }

    pub fn exp(&self) -> i8 {
        self.exp
    }

    pub fn inverse(self) -> Self {
        Self { symbol: self.symbol, exp: -self.exp }
    }

    fn rank(&self) -> (usize, bool) {
        (ALPHABET.iter().position(|&c| c == self.symbol).expect("checked symbol"), self.exp < 0)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x < y < z < u < v`, and `s < s⁻¹` for each symbol.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(symbol: char) -> Self {
        Self { letters: vec![Letter::new(symbol, 1).expect("alphabet symbol")] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn exponent_sum(&self) -> i32 {
        self.letters.iter().map(|l| l.exp as i32).sum()
    }

    pub fn count_symbol(&self, s: char) -> usize {
        self.letters.iter().filter(|l| l.symbol == s).count()
    }

    pub fn uses_only(&self, symbols: &[char]) -> bool {
        self.letters.iter().all(|l| symbols.contains(&l.symbol))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol)?;
            if l.exp < 0 {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

/// Letters with an optional `'` suffix for the inverse; `1` is the empty word. The parsed word is reduced.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::empty());
        }
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                '\'' => {
                    let last: &mut Letter =
                        letters.last_mut().ok_or_else(|| Error::Parse(format!("dangling inverse mark in {s:?}")))?;
                    if last.exp < 0 {
                        return Err(Error::Parse(format!("double inverse mark in {s:?}")));
                    }
                    last.exp = -1;
                }
                c if c.is_whitespace() => {}
                c => letters.push(Letter::new(c, 1)?),
            }
        }
        Ok(reduce(letters))
    }
}

/// Free reduction with a stack; the result is the unique reduced form.
pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|last| *last == l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

/// Replaces each `s^e` by `bindings[s]^e` and reduces.
pub fn substitute(w: &Word, bindings: &HashMap<char, Word>) -> Result<Word> {
    let mut out = Vec::new();
    for l in &w.letters {
        let b = bindings.get(&l.symbol).ok_or(Error::MissingBinding(l.symbol))?;
        if l.exp > 0 {
            out.extend_from_slice(&b.letters);
        } else {
            out.extend(b.letters.iter().rev().map(|l| l.inverse()));
        }
    }
    Ok(reduce(out))
}

fn apply3(w: &Word, x: &Word, y: &Word, z: &Word) -> Word {
    let b = HashMap::from([('x', x.clone()), ('y', y.clone()), ('z', z.clone())]);
    substitute(w, &b).expect("all three symbols bound")
}

/// Compares `w(w(x,y,z),u,v)` with `w(w(x,u,v),w(y,u,v),w(z,u,v))` as reduced words.
pub fn satisfies_distributivity_free(w: &Word) -> Result<bool> {
    if !w.uses_only(&['x', 'y', 'z']) {
        return Err(Error::Precondition(format!("{w} uses symbols other than x, y, z")));
    }
    let [x, y, z, u, v] = ALPHABET.map(Word::letter);
    let lhs = apply3(w, &apply3(w, &x, &y, &z), &u, &v);
    let rhs = apply3(w, &apply3(w, &x, &u, &v), &apply3(w, &y, &u, &v), &apply3(w, &z, &u, &v));
    Ok(lhs == rhs)
}

/// Reduced words of exact length over `x^{±1}, y^{±1}, z^{±1}` with exponent sum 1, exactly one
/// `x`-letter, and free-group distributivity, sorted.
pub fn search_words(length: usize) -> Result<Vec<Word>> {
    if length % 2 == 0 {
        return Err(Error::Precondition(format!("word length {length} is not odd")));
    }
    let mut candidates = Vec::new();
    let mut cur = Vec::with_capacity(length);
    candidate_dfs(length, &mut cur, false, 0, &mut candidates);
    let mut out: Vec<Word> = candidates
        .into_par_iter()
        .filter(|w| satisfies_distributivity_free(w).expect("x, y, z only"))
        .collect();
    out.sort();
    Ok(out)
}

fn candidate_dfs(length: usize, cur: &mut Vec<Letter>, has_x: bool, sum: i32, out: &mut Vec<Word>) {
    let remaining = (length - cur.len()) as i32;
    if (sum - 1).abs() > remaining {
        return;
    }
    if remaining == 0 {
        if has_x && sum == 1 {
            out.push(Word { letters: cur.clone() });
        }
        return;
    }
    for symbol in ['x', 'y', 'z'] {
        if symbol == 'x' && has_x {
            continue;
        }
        for exp in [1i8, -1] {
            let l = Letter { symbol, exp };
            if cur.last().is_some_and(|last| *last == l.inverse()) {
                continue;
            }
            cur.push(l);
            candidate_dfs(length, cur, has_x || symbol == 'x', sum + exp as i32, out);
            cur.pop();
        }
    }
}

/// Evaluates `w` in `g` with `x ↦ a`, `y ↦ b`, `z ↦ c`.
pub fn evaluate(w: &Word, g: &FiniteGroup, a: usize, b: usize, c: usize) -> Result<usize> {
    let mut acc = g.identity();
    for l in &w.letters {
        let base = match l.symbol {
            'x' => a,
            'y' => b,
            'z' => c,
            s => return Err(Error::MissingBinding(s)),
        };
        let v = if l.exp > 0 { base } else { g.inv(base) };
        acc = g.mul(acc, v);
    }
    Ok(acc)
}

/// `t(a,b,c) = w(a,b,c)` evaluated in `g`.
pub fn word_to_table(w: &Word, g: &FiniteGroup) -> Result<TernaryTable> {
    if !w.uses_only(&['x', 'y', 'z']) {
        return Err(Error::Precondition(format!("{w} uses symbols other than x, y, z")));
    }
    TernaryTable::from_fn(g.order(), |a, b, c| evaluate(w, g, a, b, c).expect("x, y, z only"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::heap;
    use crate::structure::is_quandle;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("xzz'"), w("x"));
        assert_eq!(w("xx'"), Word::empty());
        assert_eq!(w("yz'zy'x"), w("x"));
        assert_eq!(w("yz'zy'x").len(), 1);
        assert_eq!(w("xx'").to_string(), "1");
    }

    #[test]
    fn parse_errors() {
        assert!("'x".parse::<Word>().is_err());
        assert!("x''".parse::<Word>().is_err());
        assert!("xq".parse::<Word>().is_err());
    }

    #[test]
    fn substitute_examples() {
        let all_x = HashMap::from([('x', w("x")), ('y', w("x")), ('z', w("x"))]);
        assert_eq!(substitute(&w("xy'z"), &all_x).unwrap(), w("x"));
        let b = HashMap::from([('z', w("z")), ('x', w("zxz'"))]);
        assert_eq!(substitute(&w("zxz'"), &b).unwrap().to_string(), "zzxz'z'");
        assert_eq!(substitute(&w("zxz'"), &HashMap::new()), Err(Error::MissingBinding('z')));
    }

    #[test]
    fn distributivity_examples() {
        assert!(satisfies_distributivity_free(&w("zxz'")).unwrap());
        assert!(satisfies_distributivity_free(&w("xy'z")).unwrap());
        assert!(!satisfies_distributivity_free(&w("yx'z")).unwrap());
        assert!(satisfies_distributivity_free(&w("xu")).is_err());
    }

    #[test]
    fn word_tables() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(word_to_table(&w("xy'z"), &z3).unwrap(), heap(&z3));
        let s3 = FiniteGroup::symmetric(3);
        assert!(is_quandle(&word_to_table(&w("zxz'"), &s3).unwrap()));
        let z2 = FiniteGroup::cyclic(2);
        let odd = word_to_table(&w("yx'z"), &z2).unwrap();
        assert_eq!(odd, word_to_table(&w("xy'z"), &z2).unwrap());
        assert!(is_quandle(&odd));
    }

    #[test]
    fn search_rejects_even_lengths() {
        assert!(search_words(4).is_err());
        assert_eq!(search_words(1).unwrap(), vec![w("x")]);
    }

    #[test]
    fn letter_order() {
        let mut v = vec![w("z"), w("y'"), w("x"), w("y"), w("x'")];
        v.sort();
        let s: Vec<String> = v.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["x", "x'", "y", "y'", "z"]);
    }

    fn letter_strategy() -> impl Strategy<Value = Letter> {
        (0usize..3, prop::bool::ANY).prop_map(|(i, neg)| Letter::new(ALPHABET[i], if neg { -1 } else { 1 }).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_shrinking(ls in prop::collection::vec(letter_strategy(), 0..20)) {
            let r = reduce(ls.clone());
            prop_assert!(r.len() <= ls.len());
            prop_assert_eq!(reduce(r.letters().to_vec()), r.clone());
            prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inverse()));
        }

        #[test]
        fn identity_substitution(ls in prop::collection::vec(letter_strategy(), 0..20)) {
            let r = reduce(ls);
            let id = HashMap::from([('x', w("x")), ('y', w("y")), ('z', w("z"))]);
            prop_assert_eq!(substitute(&r, &id).unwrap(), r);
        }

        #[test]
        fn inverse_cancels(ls in prop::collection::vec(letter_strategy(), 0..20)) {
            let r = reduce(ls);
            prop_assert!(r.concat(&r.inverse()).is_empty());
        }
    }
}
