//! Lusztig data and the piecewise-linear transition maps between reduced
//! words. The crystal operators here are computed by transporting a datum to
//! a word that starts (or ends) with the relevant letter; they serve as the
//! reference against which the crossing formulas are checked.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::words::{self, MoveKind, Pair, ReducedWord, WordMove};
use crate::{Error, Result};

/// A datum anchored to a word; values are indexed by root index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LusztigDatum {
    word: ReducedWord,
    values: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LusztigJson {
    pub word: Vec<u8>,
    pub values: BTreeMap<String, i64>,
}

impl LusztigDatum {
    pub fn new(word: ReducedWord, values: Vec<i64>) -> Result<Self> {
        if values.len() != words::num_roots(word.n()) {
            return Err(Error::Malformed(format!(
                "expected {} values, got {}",
                words::num_roots(word.n()),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v < 0) {
            return Err(Error::Malformed(format!("negative Lusztig value {v}")));
        }
        Ok(LusztigDatum { word, values })
    }

    pub fn zero(word: &ReducedWord) -> Self {
        LusztigDatum { word: word.clone(), values: vec![0; word.len()] }
    }

    /// Values listed in the convex order of the word.
    pub fn from_word_coords(word: &ReducedWord, coords: &[i64]) -> Result<Self> {
        if coords.len() != word.len() {
            return Err(Error::Malformed(format!(
                "expected {} coordinates, got {}",
                word.len(),
                coords.len()
            )));
        }
        let mut values = vec![0; word.len()];
        for (&(s, t), &v) in words::convex_order(word).iter().zip(coords) {
            values[words::root_index(word.n(), s, t)] = v;
        }
        Self::new(word.clone(), values)
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, pair: Pair) -> i64 {
        self.values[words::root_index(self.n(), pair.0, pair.1)]
    }

    pub fn word_coords(&self) -> Vec<i64> {
        words::convex_order(&self.word)
            .iter()
            .map(|&p| self.get(p))
            .collect()
    }

    /// `sum x_[s,t] (alpha_s + ... + alpha_{t-1})` over the simple roots.
    pub fn weight(&self) -> Vec<i64> {
        let mut out = vec![0; self.n().saturating_sub(1)];
        for (k, (s, t)) in words::all_pairs(self.n()).into_iter().enumerate() {
            for a in s..t {
                out[a as usize - 1] += self.values[k];
            }
        }
        out
    }

    pub fn to_json(&self) -> LusztigJson {
        LusztigJson {
            word: self.word.letters().to_vec(),
            values: words::all_pairs(self.n())
                .into_iter()
                .zip(&self.values)
                .map(|(p, &v)| (words::format_pair(p), v))
                .collect(),
        }
    }

    pub fn from_json(json: &LusztigJson) -> Result<Self> {
        let word = ReducedWord::from_letters(json.word.clone())?;
        let n = word.n();
        let mut values = vec![None; word.len()];
        for (key, &v) in &json.values {
            let (s, t) = words::parse_pair(key, n)?;
            values[words::root_index(n, s, t)] = Some(v);
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(|| Error::Malformed("Lusztig datum misses a root".into()))?;
        Self::new(word, values)
    }
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word_coords().iter().map(|v| v.to_string()).collect();
        write!(f, "({}) @ {}", parts.join(","), self.word)
    }
}

/// The hexagon move on root-indexed values for `s < t < u`:
/// `m = min(x_st, x_tu)`, `y_st = x_st + x_su - m`, `y_su = m`,
/// `y_tu = x_tu + x_su - m`. It is its own inverse.
pub fn hexagon_step(values: &mut [i64], n: usize, s: u8, t: u8, u: u8) {
    let (st, su, tu) = (
        words::root_index(n, s, t),
        words::root_index(n, s, u),
        words::root_index(n, t, u),
    );
    let m = values[st].min(values[tu]);
    let (xst, xsu, xtu) = (values[st], values[su], values[tu]);
    values[st] = xst + xsu - m;
    values[su] = m;
    values[tu] = xtu + xsu - m;
}

/// The three labels `s < t < u` touched by a braid move at 1-based `position`.
pub fn braid_labels(word: &ReducedWord, position: usize) -> (u8, u8, u8) {
    let mut w = words::Permutation::identity(word.n());
    for &l in &word.letters()[..position - 1] {
        w.times_simple(l);
    }
    let k = word.letters()[position - 1].min(word.letters()[position]);
    let mut labels = [w.apply(k), w.apply(k + 1), w.apply(k + 2)];
    labels.sort();
    (labels[0], labels[1], labels[2])
}

/// Applies a move sequence to a word, transforming root-indexed values with
/// [`hexagon_step`] at every braid move.
pub fn transport_values(values: &mut [i64], word: &ReducedWord, path: &[WordMove]) -> Result<ReducedWord> {
    let mut current = word.clone();
    for &mv in path {
        if mv.kind == MoveKind::Braid {
            let (s, t, u) = braid_labels(&current, mv.position);
            hexagon_step(values, current.n(), s, t, u);
        }
        current = words::apply_move(&current, mv)?;
    }
    Ok(current)
}

/// `R^i_j`: re-expresses `x` for the word `j`.
pub fn transition(x: &LusztigDatum, j: &ReducedWord) -> Result<LusztigDatum> {
    let path = words::move_path(&x.word, j)?;
    transition_along(x, &path)
}

pub fn transition_along(x: &LusztigDatum, path: &[WordMove]) -> Result<LusztigDatum> {
    let mut values = x.values.clone();
    let word = transport_values(&mut values, &x.word, path)?;
    Ok(LusztigDatum { word, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrystalOp {
    F,
    E,
    Eps,
    FStar,
    EStar,
    EpsStar,
}

impl CrystalOp {
    pub const ALL: [CrystalOp; 6] = [
        CrystalOp::F,
        CrystalOp::E,
        CrystalOp::Eps,
        CrystalOp::FStar,
        CrystalOp::EStar,
        CrystalOp::EpsStar,
    ];

    pub fn is_star(self) -> bool {
        matches!(self, CrystalOp::FStar | CrystalOp::EStar | CrystalOp::EpsStar)
    }

    pub fn unstarred(self) -> CrystalOp {
        match self {
            CrystalOp::FStar => CrystalOp::F,
            CrystalOp::EStar => CrystalOp::E,
            CrystalOp::EpsStar => CrystalOp::Eps,
            op => op,
        }
    }
}

impl FromStr for CrystalOp {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Ok(match text {
            "f" => CrystalOp::F,
            "e" => CrystalOp::E,
            "eps" => CrystalOp::Eps,
            "f*" => CrystalOp::FStar,
            "e*" => CrystalOp::EStar,
            "eps*" => CrystalOp::EpsStar,
            other => return Err(Error::Malformed(format!("unknown operator {other:?}"))),
        })
    }
}

impl fmt::Display for CrystalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            CrystalOp::F => "f",
            CrystalOp::E => "e",
            CrystalOp::Eps => "eps",
            CrystalOp::FStar => "f*",
            CrystalOp::EStar => "e*",
            CrystalOp::EpsStar => "eps*",
        };
        f.write_str(text)
    }
}

/// Result of a crystal operator: `e` may be undefined, `eps` is a number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpOutcome {
    Datum(LusztigDatum),
    Undefined,
    Value(i64),
}

/// Transport-based crystal operators. Move paths are cached per word.
#[derive(Default)]
pub struct Oracle {
    paths: Mutex<HashMap<(ReducedWord, u8, bool), (Vec<WordMove>, ReducedWord)>>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Nearest word whose first (`at_end == false`) or last tile is `[a,a+1]`,
    /// i.e. starting with `a` or ending with `n - a`.
    pub fn path_to(&self, word: &ReducedWord, a: u8, at_end: bool) -> Result<(Vec<WordMove>, ReducedWord)> {
        let key = (word.clone(), a, at_end);
        let last = word.n() as u8 - a;
        if let Some(hit) = self.paths.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let found = words::search_moves(word, None, |w| {
            if at_end {
                w.last() == Some(&last)
            } else {
                w.first() == Some(&a)
            }
        })?
        .ok_or_else(|| Error::Invariant(format!("no word with letter {a} at the required end")))?;
        self.paths.lock().expect("cache lock").insert(key, found.clone());
        Ok(found)
    }

    pub fn apply(&self, op: CrystalOp, a: u8, x: &LusztigDatum) -> Result<OpOutcome> {
        check_letter(x.n(), a)?;
        let (path, _) = self.path_to(&x.word, a, op.is_star())?;
        apply_via(op, a, x, &path)
    }
}

/// Applies `op` after transporting along `path`, which must end at a word
/// whose first tile (last tile for starred operators) is `[a,a+1]`.
pub fn apply_via(op: CrystalOp, a: u8, x: &LusztigDatum, path: &[WordMove]) -> Result<OpOutcome> {
    let n = x.n();
    let mut values = x.values.clone();
    let there = transport_values(&mut values, &x.word, path)?;
    let order = words::convex_order(&there);
    let end = if op.is_star() { order.last() } else { order.first() };
    if end != Some(&(a, a + 1)) {
        return Err(Error::Invariant(format!("transport target {there} does not put [{a},{}] at the required end", a + 1)));
    }
    let k = words::root_index(n, a, a + 1);
    match op.unstarred() {
        CrystalOp::Eps => return Ok(OpOutcome::Value(values[k])),
        CrystalOp::F => values[k] += 1,
        CrystalOp::E => {
            if values[k] == 0 {
                return Ok(OpOutcome::Undefined);
            }
            values[k] -= 1;
        }
        _ => unreachable!("unstarred operator"),
    }
    let back: Vec<WordMove> = path.iter().rev().copied().collect();
    let word = transport_values(&mut values, &there, &back)?;
    debug_assert_eq!(&word, &x.word);
    Ok(OpOutcome::Datum(LusztigDatum { word, values }))
}

pub fn oracle_op(op: CrystalOp, a: u8, x: &LusztigDatum) -> Result<OpOutcome> {
    Oracle::new().apply(op, a, x)
}

pub(crate) fn check_letter(n: usize, a: u8) -> Result<()> {
    if a == 0 || a as usize >= n {
        return Err(Error::Malformed(format!("letter {a} outside [1,{}]", n.saturating_sub(1))));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> ReducedWord {
        text.parse().unwrap()
    }

    fn datum(word: &str, coords: &[i64]) -> LusztigDatum {
        LusztigDatum::from_word_coords(&w(word), coords).unwrap()
    }

    #[test]
    fn hexagon_step_examples() {
        let mut v = vec![2, 1, 3];
        hexagon_step(&mut v, 3, 1, 2, 3);
        assert_eq!(v, vec![1, 2, 2]);
        hexagon_step(&mut v, 3, 1, 2, 3);
        assert_eq!(v, vec![2, 1, 3]);
    }

    #[test]
    fn transition_example() {
        let x = datum("212", &[3, 1, 2]);
        let y = transition(&x, &w("121")).unwrap();
        assert_eq!(y.word_coords(), vec![1, 2, 2]);
    }

    #[test]
    fn oracle_examples() {
        let zero = LusztigDatum::zero(&w("121"));
        let OpOutcome::Datum(y) = oracle_op(CrystalOp::F, 1, &zero).unwrap() else { panic!() };
        assert_eq!(y.word_coords(), vec![1, 0, 0]);
        let x = datum("212", &[3, 1, 2]);
        let OpOutcome::Datum(y) = oracle_op(CrystalOp::F, 1, &x).unwrap() else { panic!() };
        assert_eq!(y.word_coords(), vec![2, 2, 2]);
        assert_eq!(oracle_op(CrystalOp::Eps, 1, &x).unwrap(), OpOutcome::Value(1));
        let OpOutcome::Datum(y) = oracle_op(CrystalOp::FStar, 2, &zero).unwrap() else { panic!() };
        assert_eq!(y.word_coords(), vec![0, 0, 1]);
        let OpOutcome::Datum(z) = oracle_op(CrystalOp::FStar, 1, &y).unwrap() else { panic!() };
        assert_eq!(z.word_coords(), vec![0, 1, 0]);
        assert_eq!(oracle_op(CrystalOp::E, 2, &zero).unwrap(), OpOutcome::Undefined);
    }

    #[test]
    fn json_round_trip() {
        let x = datum("212", &[3, 1, 2]);
        let json = x.to_json();
        assert_eq!(json.values["1,2"], 2);
        assert_eq!(LusztigDatum::from_json(&json).unwrap(), x);
    }
}
