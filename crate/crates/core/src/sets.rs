//! Subsets of `[n]` packed into a `u32`, element `s` at bit `s - 1`.

pub type Subset = u32;

pub fn bit(s: u8) -> Subset {
    1 << (s - 1)
}

pub fn contains(set: Subset, s: u8) -> bool {
    set & bit(s) != 0
}

/// `{1, ..., a}`
pub fn prefix(a: usize) -> Subset {
    if a == 0 {
        0
    } else {
        (1u32 << a) - 1
    }
}

/// `{n - a + 1, ..., n}`
pub fn suffix(n: usize, a: usize) -> Subset {
    prefix(n) & !prefix(n - a)
}

pub fn full(n: usize) -> Subset {
    prefix(n)
}

pub fn size(set: Subset) -> usize {
    set.count_ones() as usize
}

pub fn elements(set: Subset) -> Vec<u8> {
    (1..=32u8).filter(|&s| contains(set, s)).collect()
}

pub fn from_elements(elems: &[u8]) -> Subset {
    elems.iter().fold(0, |acc, &s| acc | bit(s))
}

pub fn is_prefix(set: Subset) -> bool {
    set & (set + 1) == 0
}

pub fn is_suffix(n: usize, set: Subset) -> bool {
    (0..=n).any(|a| suffix(n, a) == set)
}

/// Comma separated elements, e.g. `"1,3"`; the empty set prints as `""`.
pub fn format(set: Subset) -> String {
    elements(set)
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse(text: &str, n: usize) -> crate::Result<Subset> {
    let text = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut set = 0;
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let s: u8 = part
            .parse()
            .map_err(|_| crate::Error::Malformed(format!("bad set element {part:?}")))?;
        if s == 0 || s as usize > n {
            return Err(crate::Error::Malformed(format!(
                "set element {s} outside [1,{n}]"
            )));
        }
        set |= bit(s);
    }
    Ok(set)
}

/// All subsets of `[n]` in increasing numeric order.
pub fn all(n: usize) -> impl Iterator<Item = Subset> {
    0..=full(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_and_suffixes() {
        assert_eq!(elements(prefix(3)), vec![1, 2, 3]);
        assert_eq!(elements(suffix(5, 2)), vec![4, 5]);
        assert_eq!(suffix(4, 0), 0);
        assert!(is_prefix(prefix(4)));
        assert!(!is_prefix(from_elements(&[2])));
        assert!(is_suffix(4, from_elements(&[3, 4])));
        assert_eq!(parse("{1,3}", 3).unwrap(), from_elements(&[1, 3]));
        assert_eq!(format(from_elements(&[2, 5])), "2,5");
    }
}
