//! Reduced words of the longest permutation `w0` of `[n]`, the moves between
//! them and the convex orders of positive roots they induce.
//!
//! Positive roots are identified with pairs `(s, t)`, `s < t`, standing for
//! `e_s - e_t`. Every structure in this crate that is indexed by positive roots
//! uses the dense [`root_index`] numbering.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Pair = (u8, u8);

/// Largest `n` for which the word graph is explored exhaustively.
pub const ENUMERATION_LIMIT: usize = 6;

pub fn num_roots(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Dense index of the root `(s, t)`: `(1,2), (1,3), ..., (1,n), (2,3), ...`.
pub fn root_index(n: usize, s: u8, t: u8) -> usize {
    debug_assert!(s < t && t as usize <= n);
    let s = s as usize;
    let before: usize = (1..s).map(|r| n - r).sum();
    before + (t as usize - s - 1)
}

pub fn all_pairs(n: usize) -> Vec<Pair> {
    let mut out = Vec::with_capacity(num_roots(n));
    for s in 1..=n as u8 {
        for t in s + 1..=n as u8 {
            out.push((s, t));
        }
    }
    out
}

pub fn format_pair(p: Pair) -> String {
    format!("{},{}", p.0, p.1)
}

pub fn parse_pair(text: &str, n: usize) -> Result<Pair> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::Malformed(format!("bad pair {text:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: u8 = parts[0].parse().map_err(|_| bad())?;
    let b: u8 = parts[1].parse().map_err(|_| bad())?;
    let (s, t) = (a.min(b), a.max(b));
    if s == 0 || s == t || t as usize > n {
        return Err(bad());
    }
    Ok((s, t))
}

/// One-line notation, values in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(x)` for `x` in `1..=n`.
    pub fn apply(&self, x: u8) -> u8 {
        self.0[x as usize - 1]
    }

    pub fn apply_set(&self, set: crate::sets::Subset) -> crate::sets::Subset {
        crate::sets::elements(set)
            .into_iter()
            .fold(0, |acc, x| acc | crate::sets::bit(self.apply(x)))
    }

    /// `w * s_i`: swaps the entries at positions `i` and `i + 1`.
    pub fn times_simple(&mut self, i: u8) {
        self.0.swap(i as usize - 1, i as usize);
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = pos as u8 + 1;
        }
        Permutation(inv)
    }

    /// `(self * other)(x) = self(other(x))`
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// A reduced word `(i_1, ..., i_l)` with `self = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<u8> {
        let mut p = self.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 1..p.n() as u8 {
                if p.apply(i) > p.apply(i + 1) {
                    p.times_simple(i);
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }
}

/// A reduced word of `w0` in `S_n`. Letters lie in `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<u8>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("n must be at least 1".into()));
        }
        if n > 32 {
            return Err(Error::TooLarge { n, limit: 32 });
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize >= n) {
            return Err(Error::Malformed(format!(
                "letter {bad} outside [1,{}]",
                n - 1
            )));
        }
        if letters.len() != num_roots(n) {
            return Err(Error::NotReduced(letters));
        }
        let mut w = Permutation::identity(n);
        for &l in &letters {
            if w.apply(l) > w.apply(l + 1) {
                return Err(Error::NotReduced(letters));
            }
            w.times_simple(l);
        }
        Ok(ReducedWord { n, letters })
    }

    /// Infers `n` from the length `n(n-1)/2`.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        let len = letters.len();
        let n = (1..=32)
            .find(|&n| num_roots(n) == len)
            .ok_or_else(|| Error::Malformed(format!("length {len} is not n(n-1)/2")))?;
        Self::new(n, letters)
    }

    /// `(1, 2,1, 3,2,1, ...)`, the lexicographically smallest reduced word.
    pub fn lex_min(n: usize) -> Self {
        let mut letters = Vec::with_capacity(num_roots(n));
        for k in 1..n as u8 {
            letters.extend((1..=k).rev());
        }
        ReducedWord { n, letters }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `i*_k = n - i_{N+1-k}`
    pub fn star(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|&l| self.n as u8 - l)
            .collect();
        ReducedWord { n: self.n, letters }
    }

    /// The prefix products `w_0 = e, w_1, ..., w_N`.
    pub fn prefix_permutations(&self) -> Vec<Permutation> {
        let mut w = Permutation::identity(self.n);
        let mut out = vec![w.clone()];
        for &l in &self.letters {
            w.times_simple(l);
            out.push(w.clone());
        }
        out
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let letters = if text.contains(',') || text.contains(' ') {
            text.split([',', ' '])
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Malformed(format!("bad letter {p:?}")))
                })
                .collect::<Result<Vec<u8>>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Malformed(format!("bad letter {c:?}")))
                })
                .collect::<Result<Vec<u8>>>()?
        };
        ReducedWord::from_letters(letters)
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let letters = Vec::<u8>::deserialize(deserializer)?;
        ReducedWord::from_letters(letters).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Commutation,
    Braid,
}

/// A move acting at the 1-based `position` of a word: a commutation swaps
/// positions `p, p+1`, a braid rewrites `p, p+1, p+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WordMove {
    pub position: usize,
    pub kind: MoveKind,
}

impl WordMove {
    pub fn commutation(position: usize) -> Self {
        WordMove { position, kind: MoveKind::Commutation }
    }

    pub fn braid(position: usize) -> Self {
        WordMove { position, kind: MoveKind::Braid }
    }
}

impl fmt::Display for WordMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::Commutation => "commutation",
            MoveKind::Braid => "braid",
        };
        write!(f, "{kind}@{}", self.position)
    }
}

fn move_applies(letters: &[u8], mv: WordMove) -> bool {
    let k = mv.position.wrapping_sub(1);
    match mv.kind {
        MoveKind::Commutation => k + 1 < letters.len() && letters[k].abs_diff(letters[k + 1]) >= 2,
        MoveKind::Braid => {
            k + 2 < letters.len()
                && letters[k] == letters[k + 2]
                && letters[k].abs_diff(letters[k + 1]) == 1
        }
    }
}

fn apply_in_place(letters: &mut [u8], mv: WordMove) {
    let k = mv.position - 1;
    match mv.kind {
        MoveKind::Commutation => letters.swap(k, k + 1),
        MoveKind::Braid => {
            let (a, b) = (letters[k], letters[k + 1]);
            letters[k] = b;
            letters[k + 1] = a;
            letters[k + 2] = b;
        }
    }
}

pub fn apply_move(word: &ReducedWord, mv: WordMove) -> Result<ReducedWord> {
    if mv.position == 0 || !move_applies(&word.letters, mv) {
        let kind = match mv.kind {
            MoveKind::Commutation => "commutation",
            MoveKind::Braid => "braid",
        };
        return Err(Error::InvalidMove { kind, position: mv.position });
    }
    let mut letters = word.letters.clone();
    apply_in_place(&mut letters, mv);
    Ok(ReducedWord { n: word.n, letters })
}

/// Moves applicable to `word`, ordered by position.
pub fn available_moves(word: &ReducedWord) -> Vec<WordMove> {
    moves_of(&word.letters)
}

fn moves_of(letters: &[u8]) -> Vec<WordMove> {
    let mut out = Vec::new();
    for p in 1..=letters.len() {
        for mv in [WordMove::commutation(p), WordMove::braid(p)] {
            if move_applies(letters, mv) {
                out.push(mv);
            }
        }
    }
    out
}

/// All reduced words of `w0`, in breadth-first order from [`ReducedWord::lex_min`].
pub fn enumerate_reduced_words(n: usize) -> Result<Vec<ReducedWord>> {
    if n == 0 {
        return Err(Error::Malformed("n must be at least 1".into()));
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { n, limit: ENUMERATION_LIMIT });
    }
    let seed = ReducedWord::lex_min(n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(seed.letters.clone());
    queue.push_back(seed.letters);
    while let Some(letters) = queue.pop_front() {
        for mv in moves_of(&letters) {
            let mut next = letters.clone();
            apply_in_place(&mut next, mv);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(ReducedWord { n, letters });
    }
    Ok(out)
}

/// Breadth-first search from `from` for the nearest word satisfying `goal`,
/// optionally restricted to moves of one kind. Ties are broken by the
/// position order of [`available_moves`].
pub fn search_moves(
    from: &ReducedWord,
    only: Option<MoveKind>,
    goal: impl Fn(&[u8]) -> bool,
) -> Result<Option<(Vec<WordMove>, ReducedWord)>> {
    if from.n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { n: from.n, limit: ENUMERATION_LIMIT });
    }
    if goal(&from.letters) {
        return Ok(Some((Vec::new(), from.clone())));
    }
    let mut parent: HashMap<Vec<u8>, (Vec<u8>, WordMove)> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(from.letters.clone(), (Vec::new(), WordMove::braid(0)));
    queue.push_back(from.letters.clone());
    while let Some(letters) = queue.pop_front() {
        for mv in moves_of(&letters) {
            if only.is_some_and(|k| k != mv.kind) {
                continue;
            }
            let mut next = letters.clone();
            apply_in_place(&mut next, mv);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (letters.clone(), mv));
            if goal(&next) {
                let mut path = Vec::new();
                let mut cur = next.clone();
                while cur != from.letters {
                    let (prev, mv) = parent[&cur].clone();
                    path.push(mv);
                    cur = prev;
                }
                path.reverse();
                let target = ReducedWord { n: from.n, letters: next };
                return Ok(Some((path, target)));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// A shortest sequence of moves turning `i` into `j`.
pub fn move_path(i: &ReducedWord, j: &ReducedWord) -> Result<Vec<WordMove>> {
    if i.n != j.n {
        return Err(Error::RankMismatch(i.n, j.n));
    }
    let (path, _) = search_moves(i, None, |w| w == j.letters.as_slice())?
        .ok_or_else(|| Error::Invariant(format!("no move path from {i} to {j}")))?;
    Ok(path)
}

/// `beta_k = w_{k-1}(alpha_{i_k})` as pairs `(s, t)`.
pub fn convex_order(word: &ReducedWord) -> Vec<Pair> {
    let mut w = Permutation::identity(word.n);
    let mut out = Vec::with_capacity(word.len());
    for &l in &word.letters {
        let (x, y) = (w.apply(l), w.apply(l + 1));
        out.push((x.min(y), x.max(y)));
        w.times_simple(l);
    }
    out
}

/// Whether every sum `[s,u] = [s,t] + [t,u]` sits between its summands.
pub fn is_convex(n: usize, order: &[Pair]) -> bool {
    if order.len() != num_roots(n) {
        return false;
    }
    let mut pos = vec![usize::MAX; num_roots(n)];
    for (k, &(s, t)) in order.iter().enumerate() {
        if s >= t || t as usize > n {
            return false;
        }
        pos[root_index(n, s, t)] = k;
    }
    if pos.contains(&usize::MAX) {
        return false;
    }
    for s in 1..=n as u8 {
        for t in s + 1..=n as u8 {
            for u in t + 1..=n as u8 {
                let a = pos[root_index(n, s, t)];
                let b = pos[root_index(n, t, u)];
                let c = pos[root_index(n, s, u)];
                if !(a.min(b) < c && c < a.max(b)) {
                    return false;
                }
            }
        }
    }
    true
}

/// A reduced word of `w0` whose prefix products include a permutation
/// sending `[#S]` onto `S`, so that `S` is a vertex of its tiling.
pub fn word_with_vertex(n: usize, set: crate::sets::Subset) -> Result<ReducedWord> {
    use crate::sets;
    if set & !sets::full(n) != 0 {
        return Err(Error::Malformed(format!("set {{{}}} not inside [{n}]", sets::format(set))));
    }
    let inside = sets::elements(set);
    let outside = sets::elements(sets::full(n) & !set);
    let w = Permutation(inside.into_iter().chain(outside).collect());
    let rest = w.inverse().compose(&Permutation::longest(n));
    let mut letters = w.reduced_word();
    letters.extend(rest.reduced_word());
    ReducedWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> ReducedWord {
        text.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(ReducedWord::new(3, vec![1, 2, 1]).is_ok());
        assert!(matches!(ReducedWord::new(3, vec![1, 1, 2]), Err(Error::NotReduced(_))));
        assert!(matches!(ReducedWord::new(3, vec![1, 3, 1]), Err(Error::Malformed(_))));
        assert!(matches!(ReducedWord::new(3, vec![1, 2]), Err(Error::NotReduced(_))));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_reduced_words(2).unwrap(), vec![w("1")]);
        assert_eq!(enumerate_reduced_words(3).unwrap().len(), 2);
        assert_eq!(enumerate_reduced_words(4).unwrap().len(), 16);
        assert!(matches!(enumerate_reduced_words(7), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn moves() {
        assert_eq!(apply_move(&w("121"), WordMove::braid(1)).unwrap(), w("212"));
        assert_eq!(apply_move(&w("123121"), WordMove::braid(4)).unwrap(), w("123212"));
        assert_eq!(apply_move(&w("213213"), WordMove::commutation(2)).unwrap(), w("231213"));
        assert!(apply_move(&w("121"), WordMove::commutation(1)).is_err());
    }

    #[test]
    fn convex_orders() {
        assert_eq!(convex_order(&w("121")), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(convex_order(&w("212")), vec![(2, 3), (1, 3), (1, 2)]);
    }

    #[test]
    fn vertex_words() {
        use crate::sets::from_elements;
        assert_eq!(word_with_vertex(3, from_elements(&[2])).unwrap(), w("121"));
        assert_eq!(word_with_vertex(3, from_elements(&[1, 3])).unwrap(), w("212"));
    }

    #[test]
    fn root_indexing() {
        for n in 1..7 {
            for (k, (s, t)) in all_pairs(n).into_iter().enumerate() {
                assert_eq!(root_index(n, s, t), k);
            }
        }
    }
}
