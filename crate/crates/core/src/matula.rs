//! Matula coding: the bijection between finite non-planar rooted trees and
//! the positive integers given by `n(•) = 1` and
//! `n(T) = p_{n(T_1)} ··· p_{n(T_l)}` over the root's subtrees.
//!
//! Canonical form orders children by ascending Matula code; since the trees
//! are non-planar (children form a multiset), any fixed order is legitimate
//! and this one makes text round-trips deterministic. [`decode`] always
//! returns canonical form; [`canonicalize`] re-sorts an arbitrarily ordered
//! tree.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::primes::{factorize, PrimeTable};
use crate::{Error, Result};

/// A finite non-planar rooted tree; the empty child list is the one-vertex
/// tree `•`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub children: Vec<RootedTree>,
}

impl RootedTree {
    /// The one-vertex tree `•`.
    pub fn leaf() -> Self {
        RootedTree { children: vec![] }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of vertices, root included.
    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(Self::vertex_count).sum::<usize>()
    }

    /// `height(•) = 0`; otherwise one more than the tallest child.
    pub fn height(&self) -> u32 {
        self.children
            .iter()
            .map(|c| 1 + c.height())
            .max()
            .unwrap_or(0)
    }
}

/// Matula number of a tree: `n(•) = 1`, `n(T) = Π p_{n(T_i)}`.
///
/// The result is arbitrary precision (codes explode doubly exponentially),
/// but every intermediate child code must index into the table's nth-prime
/// range; otherwise a capacity error names the offending subtree code.
pub fn encode(tree: &RootedTree, table: &PrimeTable) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for child in &tree.children {
        let code = encode(child, table)?;
        let idx = code.to_u64().filter(|&i| i <= table.count()).ok_or_else(|| {
            Error::Capacity(format!(
                "subtree code {code} exceeds the table's nth-prime range (count {})",
                table.count()
            ))
        })?;
        acc *= BigUint::from(table.nth_prime(idx)?);
    }
    Ok(acc)
}

/// Inverse of [`encode`]; returns canonical form (children ascending by
/// Matula code).
pub fn decode(n: &BigUint, table: &PrimeTable) -> Result<RootedTree> {
    let small = n.to_u128().ok_or_else(|| {
        Error::Capacity(format!("code with {} bits exceeds the decode range", n.bits()))
    })?;
    decode_u128(small, table)
}

/// [`decode`] for codes that fit in 128 bits.
pub fn decode_u128(n: u128, table: &PrimeTable) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::Contract("Matula codes start at 1".into()));
    }
    if n == 1 {
        return Ok(RootedTree::leaf());
    }
    let mut children = Vec::new();
    for (p, e) in factorize(n, table)? {
        let p64 = u64::try_from(p).map_err(|_| {
            Error::Capacity(format!("prime factor {p} exceeds the table range"))
        })?;
        let idx = table.prime_index(p64).map_err(|_| {
            Error::Capacity(format!(
                "prime factor {p64} beyond sieve limit {}; its index is unresolvable",
                table.limit()
            ))
        })?;
        let sub = decode_u128(idx as u128, table)?;
        for _ in 0..e {
            children.push(sub.clone());
        }
    }
    // factorize returns primes ascending, hence child codes ascending.
    Ok(RootedTree { children })
}

/// Re-orders children (recursively) by ascending Matula code.
pub fn canonicalize(tree: &mut RootedTree, table: &PrimeTable) -> Result<()> {
    for child in &mut tree.children {
        canonicalize(child, table)?;
    }
    let mut keyed: Vec<(BigUint, RootedTree)> = core::mem::take(&mut tree.children)
        .into_iter()
        .map(|c| Ok((encode(&c, table)?, c)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    tree.children = keyed.into_iter().map(|(_, c)| c).collect();
    Ok(())
}

/// Memo for [`height_of_code`]: a dense code→height cache for small codes.
pub struct HeightMemo {
    cache: Vec<u8>,
}

const HEIGHT_UNSET: u8 = u8::MAX;
/// Dense memo covers codes below this bound.
const MEMO_SPAN: usize = 1 << 20;

impl HeightMemo {
    pub fn new() -> Self {
        HeightMemo {
            cache: vec![HEIGHT_UNSET; MEMO_SPAN],
        }
    }
}

impl Default for HeightMemo {
    fn default() -> Self {
        Self::new()
    }
}

/// Height of the tree with Matula code `n`, without materializing the tree.
pub fn height_of_code(n: u128, table: &PrimeTable, memo: &mut HeightMemo) -> Result<u32> {
    if n == 0 {
        return Err(Error::Contract("Matula codes start at 1".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    if (n as usize) < MEMO_SPAN {
        let h = memo.cache[n as usize];
        if h != HEIGHT_UNSET {
            return Ok(h as u32);
        }
    }
    let mut height = 0u32;
    for (p, _) in factorize(n, table)? {
        let p64 = u64::try_from(p).map_err(|_| {
            Error::Capacity(format!("prime factor {p} exceeds the table range"))
        })?;
        let idx = table.prime_index(p64)? as u128;
        height = height.max(1 + height_of_code(idx, table, memo)?);
    }
    if (n as usize) < MEMO_SPAN && height < HEIGHT_UNSET as u32 {
        memo.cache[n as usize] = height as u8;
    }
    Ok(height)
}

/// Whether `n` belongs to `A_m`: `n >= 2` and every prime factor of `n` is
/// `p_{m^k}` for some `k >= 0`. The integer 1 (empty product) is excluded.
pub fn is_in_am(n: u128, m: u64, table: &PrimeTable) -> Result<bool> {
    if m < 2 {
        return Err(Error::Domain(format!("A_m requires m >= 2, got {m}")));
    }
    if n < 2 {
        return Ok(false);
    }
    for (p, _) in factorize(n, table)? {
        let p64 = u64::try_from(p).map_err(|_| {
            Error::Capacity(format!("prime factor {p} exceeds the table range"))
        })?;
        let mut idx = table.prime_index(p64)?;
        while idx % m == 0 {
            idx /= m;
        }
        if idx != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Count of Matula codes `n <= x` whose trees have height at most 2.
///
/// Includes the code 1 (the one-vertex tree), so the value equals
/// `M_{2,2}(x) + 1`.
pub fn count_height_le2(x: u64, table: &PrimeTable) -> Result<u64> {
    let mut memo = HeightMemo::new();
    let mut count = 0u64;
    for n in 1..=x {
        if height_of_code(n as u128, table, &mut memo)? <= 2 {
            count += 1;
        }
    }
    Ok(count)
}

/// Parses the tree notation `tree := "(" tree* ")"`.
pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let bytes = text.as_bytes();
    let (tree, used) = parse_at(bytes, 0)?;
    if used != bytes.len() {
        return Err(Error::Parse {
            pos: used,
            msg: String::from("trailing characters after tree"),
        });
    }
    Ok(tree)
}

fn parse_at(bytes: &[u8], pos: usize) -> Result<(RootedTree, usize)> {
    match bytes.get(pos) {
        Some(b'(') => {}
        Some(&c) => {
            return Err(Error::Parse {
                pos,
                msg: format!("expected '(', found {:?}", c as char),
            })
        }
        None => {
            return Err(Error::Parse {
                pos,
                msg: String::from("expected '(', found end of input"),
            })
        }
    }
    let mut children = Vec::new();
    let mut cur = pos + 1;
    loop {
        match bytes.get(cur) {
            Some(b')') => return Ok((RootedTree { children }, cur + 1)),
            Some(b'(') => {
                let (child, next) = parse_at(bytes, cur)?;
                children.push(child);
                cur = next;
            }
            Some(&c) => {
                return Err(Error::Parse {
                    pos: cur,
                    msg: format!("unexpected character {:?}", c as char),
                })
            }
            None => {
                return Err(Error::Parse {
                    pos: cur,
                    msg: String::from("unbalanced '(': tree not closed"),
                })
            }
        }
    }
}

/// Formats a tree in the `"(" tree* ")"` notation, children in stored
/// order (canonical when the tree came from [`decode`] or
/// [`canonicalize`]).
pub fn format_tree(tree: &RootedTree) -> String {
    let mut out = String::new();
    write_tree(tree, &mut out);
    out
}

fn write_tree(tree: &RootedTree, out: &mut String) {
    out.push('(');
    for child in &tree.children {
        write_tree(child, out);
    }
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::build_prime_table;

    fn table() -> PrimeTable {
        build_prime_table(2_000_000).unwrap()
    }

    #[test]
    fn encode_basics() {
        let t = table();
        assert_eq!(encode(&RootedTree::leaf(), &t).unwrap(), BigUint::from(1u32));
        // Star with k leaf children: 2^k.
        for k in [1usize, 3, 7] {
            let star = RootedTree {
                children: vec![RootedTree::leaf(); k],
            };
            assert_eq!(
                encode(&star, &t).unwrap(),
                BigUint::from(2u32).pow(k as u32)
            );
        }
        // Chain root–child–grandchild: p_{p_1} = p_2 = 3.
        let chain = parse_tree("((()))").unwrap();
        assert_eq!(encode(&chain, &t).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn decode_basics() {
        let t = table();
        assert_eq!(decode(&BigUint::from(1u32), &t).unwrap(), RootedTree::leaf());
        let four = decode(&BigUint::from(4u32), &t).unwrap();
        assert_eq!(four, parse_tree("(()())").unwrap());
        let three = decode(&BigUint::from(3u32), &t).unwrap();
        assert_eq!(three, parse_tree("((()))").unwrap());
    }

    #[test]
    fn roundtrip_codes() {
        let t = table();
        for n in 1u32..=2000 {
            let code = BigUint::from(n);
            let tree = decode(&code, &t).unwrap();
            assert_eq!(encode(&tree, &t).unwrap(), code, "n = {n}");
        }
    }

    #[test]
    fn heights() {
        let t = table();
        let mut memo = HeightMemo::new();
        assert_eq!(height_of_code(1, &t, &mut memo).unwrap(), 0);
        for k in 1..10u32 {
            assert_eq!(height_of_code(1 << k, &t, &mut memo).unwrap(), 1);
        }
        assert_eq!(height_of_code(3, &t, &mut memo).unwrap(), 2);
        // Matches the materialized tree.
        for n in 1u32..=500 {
            let tree = decode(&BigUint::from(n), &t).unwrap();
            assert_eq!(
                height_of_code(n as u128, &t, &mut memo).unwrap(),
                tree.height(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn am_membership() {
        let t = table();
        assert!(is_in_am(18, 2, &t).unwrap()); // 2 · 3²: indices 1, 2
        assert!(!is_in_am(5, 2, &t).unwrap()); // p_3, 3 not a power of 2
        assert!(!is_in_am(1, 2, &t).unwrap());
        assert!(!is_in_am(1, 7, &t).unwrap());
        // A_2 is exactly the codes of trees with height 1 or 2.
        let mut memo = HeightMemo::new();
        for n in 1u128..=3000 {
            let member = is_in_am(n, 2, &t).unwrap();
            let h = height_of_code(n, &t, &mut memo).unwrap();
            assert_eq!(member, n >= 2 && h <= 2, "n = {n}");
        }
    }

    #[test]
    fn height_le2_counts() {
        let t = table();
        assert_eq!(count_height_le2(1, &t).unwrap(), 1);
        assert_eq!(count_height_le2(10, &t).unwrap(), 8);
        assert_eq!(count_height_le2(100, &t).unwrap(), 35);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_tree("()").unwrap(), RootedTree::leaf());
        assert!(matches!(parse_tree("(("), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("()x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_tree(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("(a)"), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn format_parse_roundtrip() {
        let t = table();
        for n in 1u32..=300 {
            let tree = decode(&BigUint::from(n), &t).unwrap();
            let text = format_tree(&tree);
            assert_eq!(parse_tree(&text).unwrap(), tree, "n = {n}");
        }
    }
}
