use std::collections::BTreeSet;

use super::SetNumError;
use crate::pattern::Symbol;

/// Unifies matching elements, keeping each at its first occurrence.
pub fn multiset_to_set(m: &[Symbol]) -> Vec<Symbol> {
    let mut seen = BTreeSet::new();
    m.iter().filter(|s| seen.insert(*s)).cloned().collect()
}

fn check_set(s: &[Symbol]) -> Result<(), SetNumError> {
    let mut seen = BTreeSet::new();
    match s.iter().find(|x| !seen.insert(*x)) {
        Some(dup) => Err(SetNumError::NotASet(dup.to_string())),
        None => Ok(()),
    }
}

/// Both sets laid side by side with shared elements unified; sorted.
pub fn set_union(a: &[Symbol], b: &[Symbol]) -> Result<Vec<Symbol>, SetNumError> {
    check_set(a)?;
    check_set(b)?;
    let mut out = multiset_to_set(&[a, b].concat());
    out.sort();
    Ok(out)
}

/// The elements that found a match in the other set; sorted.
pub fn set_intersection(a: &[Symbol], b: &[Symbol]) -> Result<Vec<Symbol>, SetNumError> {
    check_set(a)?;
    check_set(b)?;
    let bs: BTreeSet<&Symbol> = b.iter().collect();
    let mut out: Vec<Symbol> = a.iter().filter(|x| bs.contains(x)).cloned().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{render, symbols};

    #[test]
    fn multiset() {
        assert_eq!(render(&multiset_to_set(&symbols("a b a c b b c a c"))), "a b c");
        assert!(multiset_to_set(&[]).is_empty());
        assert_eq!(render(&multiset_to_set(&symbols("z y x"))), "z y x");
    }

    #[test]
    fn union_and_intersection() {
        let a = symbols("b f d a c e");
        let b = symbols("e g i f d h");
        assert_eq!(render(&set_union(&a, &b).unwrap()), "a b c d e f g h i");
        assert_eq!(render(&set_intersection(&a, &b).unwrap()), "d e f");
        assert_eq!(set_union(&symbols("a a"), &b), Err(SetNumError::NotASet("a".into())));
        assert!(set_intersection(&a, &symbols("x x")).is_err());
    }
}
