//! String data of Lusztig data, the crystal action on string data, and the
//! string cone cut out by the dual Reineke vectors.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::crossings::CrossingCrystal;
use crate::error::ensure;
use crate::lusztig::{check_letter, LusztigDatum};
use crate::report::Report;
use crate::words::{self, Pair, ReducedWord};
use crate::{Error, Result};

/// `x_k = eps_{i_k}` of the datum after removing the first `k-1` string
/// entries with `e_{i_1}, ..., e_{i_{k-1}}`.
pub fn string_datum(crystal: &CrossingCrystal, x: &LusztigDatum) -> Result<Vec<i64>> {
    let mut current = x.clone();
    let mut out = Vec::with_capacity(crystal.word().len());
    for &a in crystal.word().letters() {
        let k = crystal.eps(a, &current)?;
        for _ in 0..k {
            current = crystal
                .e(a, &current)?
                .ok_or_else(|| Error::Invariant("e undefined below eps".into()))?;
        }
        out.push(k);
    }
    ensure!(current.values().iter().all(|&v| v == 0), "string peeling did not reach zero");
    Ok(out)
}

fn cartan(a: u8, b: u8) -> i64 {
    match a.abs_diff(b) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// `f_a` on string data: increments the first `j` with `i_j = a` maximising
/// `nu_j = x_j + sum_{t > j} <h_{i_j}, alpha_{i_t}> x_t`.
pub fn string_op_f(word: &ReducedWord, a: u8, x: &[i64]) -> Result<Vec<i64>> {
    check_letter(word.n(), a)?;
    if x.len() != word.len() {
        return Err(Error::Malformed(format!("expected {} string entries", word.len())));
    }
    let letters = word.letters();
    let mut best: Option<(i64, usize)> = None;
    for j in 0..letters.len() {
        if letters[j] != a {
            continue;
        }
        let nu = x[j] + (j + 1..letters.len()).map(|t| cartan(a, letters[t]) * x[t]).sum::<i64>();
        if best.map_or(true, |(b, _)| nu > b) {
            best = Some((nu, j));
        }
    }
    let (_, j) = best.ok_or_else(|| Error::Invariant(format!("letter {a} missing from {word}")))?;
    let mut out = x.to_vec();
    out[j] += 1;
    Ok(out)
}

/// A polyhedral cone `{v : row . v >= 0 for every row}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    /// Coordinate labels; for string cones the pairs of the convex order.
    pub coords: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl Cone {
    pub fn contains(&self, v: &[i64]) -> bool {
        self.rows.iter().all(|r| r.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }

    /// Integer points of the cone inside `{lo..=hi}^d`.
    pub fn points_in_box(&self, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        box_points(self.coords.len(), lo, hi).into_iter().filter(|p| self.contains(p)).collect()
    }

    pub fn inequalities(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut terms = Vec::new();
            for (c, name) in row.iter().zip(&self.coords) {
                match c {
                    0 => {}
                    1 => terms.push(format!("+ x[{name}]")),
                    -1 => terms.push(format!("- x[{name}]")),
                    c if *c > 0 => terms.push(format!("+ {c} x[{name}]")),
                    c => terms.push(format!("- {} x[{name}]", -c)),
                }
            }
            let text = terms.join(" ");
            let text = text.strip_prefix("+ ").unwrap_or(&text);
            out.push_str(&format!("{text} >= 0\n"));
        }
        out
    }
}

pub fn box_points(dim: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(dim)];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
        for v in &out {
            for k in lo..=hi {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Reineke vectors (dual when `dual` is set) of every letter, in the convex
/// order of the word, without repetitions.
pub fn reineke_rows(crystal: &CrossingCrystal, dual: bool) -> Vec<Vec<i64>> {
    let word = crystal.word();
    let order = words::convex_order(word);
    let mut rows = BTreeSet::new();
    for a in 1..word.n() as u8 {
        for r in crystal.poset(a, dual).reineke_vectors() {
            rows.insert(
                order
                    .iter()
                    .map(|&(s, t)| r[words::root_index(word.n(), s, t)])
                    .collect::<Vec<i64>>(),
            );
        }
    }
    rows.into_iter().rev().collect()
}

/// The cone whose rows are the dual Reineke vectors of the word.
pub fn string_cone(crystal: &CrossingCrystal) -> Cone {
    let coords = words::convex_order(crystal.word()).into_iter().map(words::format_pair).collect();
    Cone { coords, rows: reineke_rows(crystal, true) }
}

pub fn coordinate_pairs(word: &ReducedWord) -> Vec<Pair> {
    words::convex_order(word)
}

/// Checks that the string data reachable from `0` by `f*` are the integer
/// points of the string cone: (a) data found within `depth` steps lie in the
/// cone and each `f*_a` step raises one entry at a position carrying `a`;
/// (b) inside `{0..box_edge}^N` the reachable data and the cone points agree.
pub fn polar_duality_check(crystal: &CrossingCrystal, box_edge: i64, depth: usize) -> Result<Report> {
    let word = crystal.word().clone();
    let n = word.n();
    let cone = string_cone(crystal);
    let mut report = Report::new(format!("string cone duality {word}"));

    let zero = LusztigDatum::zero(&word);
    let mut layer = vec![zero.clone()];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(zero.values().to_vec());
    for _ in 0..depth {
        let mut next = Vec::new();
        for y in &layer {
            let sy = string_datum(crystal, y)?;
            for a in 1..n as u8 {
                let fy = crystal.f_star(a, y)?;
                let sfy = string_datum(crystal, &fy)?;
                report.expect(cone.contains(&sfy), || format!("string datum {sfy:?} outside the cone"));
                let diff: Vec<usize> = (0..sy.len()).filter(|&k| sfy[k] != sy[k]).collect();
                let unit = diff.len() == 1 && sfy[diff[0]] == sy[diff[0]] + 1 && word.letters()[diff[0]] == a;
                report.expect(unit, || format!("f*_{a} moved {sy:?} to {sfy:?}"));
                let predicted = string_op_f(&word, a, &sy)?;
                report.expect(predicted == sfy, || format!("string f_{a} of {sy:?} gave {predicted:?}, expected {sfy:?}"));
                if seen.insert(fy.values().to_vec()) {
                    next.push(fy);
                }
            }
        }
        layer = next;
    }

    let inside = |s: &[i64]| s.iter().all(|&v| (0..=box_edge).contains(&v));
    let mut reached: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier = vec![zero];
    reached.insert(string_datum(crystal, &frontier[0])?);
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    while let Some(y) = frontier.pop() {
        for a in 1..n as u8 {
            let fy = crystal.f_star(a, &y)?;
            if !visited.insert(fy.values().to_vec()) {
                continue;
            }
            let s = string_datum(crystal, &fy)?;
            if inside(&s) {
                reached.insert(s);
                frontier.push(fy);
            }
        }
    }
    let expected: BTreeSet<Vec<i64>> = cone.points_in_box(0, box_edge).into_iter().collect();
    for p in expected.difference(&reached) {
        report.fail(format!("cone point {p:?} is not a string datum"));
    }
    for p in reached.difference(&expected) {
        report.fail(format!("string datum {p:?} is not a cone point"));
    }
    for _ in expected.intersection(&reached) {
        report.pass();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> ReducedWord {
        text.parse().unwrap()
    }

    #[test]
    fn string_examples() {
        let word = w("121");
        let c = CrossingCrystal::new(&word).unwrap();
        let d = |coords: &[i64]| LusztigDatum::from_word_coords(&word, coords).unwrap();
        assert_eq!(string_datum(&c, &d(&[0, 0, 1])).unwrap(), vec![0, 1, 0]);
        assert_eq!(string_datum(&c, &d(&[0, 1, 0])).unwrap(), vec![0, 1, 1]);
        assert_eq!(string_datum(&c, &d(&[1, 1, 0])).unwrap(), vec![1, 1, 1]);
        assert_eq!(string_op_f(&word, 2, &[0, 0, 0]).unwrap(), vec![0, 1, 0]);
        assert_eq!(string_op_f(&word, 1, &[0, 1, 0]).unwrap(), vec![0, 1, 1]);
        assert_eq!(string_op_f(&word, 1, &[0, 1, 1]).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn cones() {
        let c = CrossingCrystal::new(&w("212")).unwrap();
        let cone = string_cone(&c);
        let rows: BTreeSet<Vec<i64>> = cone.rows.iter().cloned().collect();
        let want: BTreeSet<Vec<i64>> = [vec![1, 0, 0], vec![0, 1, -1], vec![0, 0, 1]].into_iter().collect();
        assert_eq!(rows, want);
        let c = CrossingCrystal::new(&w("121")).unwrap();
        let rows: BTreeSet<Vec<i64>> = string_cone(&c).rows.into_iter().collect();
        assert_eq!(rows, want);
    }
}
