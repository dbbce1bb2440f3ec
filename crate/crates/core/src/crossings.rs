//! `a`-crossings of a tiling, their partial order, and the crossing formulas
//! for the crystal operators on Lusztig data.
//!
//! A primal `a`-crossing is a κ_a-ascending neighbour sequence from the first
//! tile of strip `a` to the first tile of strip `a+1`. Dual crossings run
//! between the last tiles of these strips; they are obtained from primal
//! crossings of the tiling of the reversed word `i*` (same tile labels), and
//! [`direct_dual_crossings`] enumerates them in place as a cross-check.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::ensure;
use crate::lusztig::{check_letter, CrystalOp, LusztigDatum, OpOutcome};
use crate::tiling::{Edge, Side, TileId, Tiling};
use crate::words::{self, Pair, ReducedWord};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub dual: bool,
    pub a: u8,
    /// Tiles as root indices, in path order.
    pub tiles: Vec<TileId>,
    /// Strip sequence, from `a` to `a+1`.
    pub strips: Vec<u8>,
    /// Root-indexed vector with `sgn(s_{i+1} - s_i)` at each turning tile.
    pub rvec: Vec<i64>,
    /// Root-indexed coefficients of the linear form evaluated on Lusztig data.
    pub form: Vec<i64>,
    pub reineke: bool,
    /// Tiles of the path together with those on its left.
    closure: u64,
}

impl Crossing {
    pub fn pairs(&self, n: usize) -> Vec<Pair> {
        let all = words::all_pairs(n);
        self.tiles.iter().map(|&t| all[t]).collect()
    }

    pub fn closure(&self) -> BTreeSet<TileId> {
        (0..64).filter(|&k| self.closure >> k & 1 == 1).collect()
    }

    fn path_mask(&self) -> u64 {
        self.tiles.iter().fold(0, |m, &t| m | 1 << t)
    }

    pub fn evaluate(&self, values: &[i64]) -> i64 {
        dot(&self.form, values)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `1` if `s <= a < a+1 <= t`, else `-1`.
pub fn epsilon_bar(a: u8, pair: Pair) -> i64 {
    if pair.0 <= a && a < pair.1 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingJson {
    pub tiles: Vec<[u8; 2]>,
    pub strips: Vec<u8>,
    pub dual: bool,
    pub reineke: bool,
    /// Reineke vector in the convex order of the word.
    pub rvec: Vec<i64>,
}

/// The crossings for one letter, ordered by `closure ⊆` and `opening ⊆`.
#[derive(Clone, Debug)]
pub struct CrossingPoset {
    pub n: usize,
    pub a: u8,
    pub dual: bool,
    pub crossings: Vec<Crossing>,
    leq: Vec<Vec<bool>>,
}

impl CrossingPoset {
    fn new(n: usize, a: u8, dual: bool, crossings: Vec<Crossing>) -> Self {
        let leq = crossings
            .iter()
            .map(|g| {
                crossings
                    .iter()
                    .map(|l| {
                        let (gc, lc) = (g.closure, l.closure);
                        let (go, lo) = (gc & !g.path_mask(), lc & !l.path_mask());
                        gc & !lc == 0 && go & !lo == 0
                    })
                    .collect()
            })
            .collect();
        CrossingPoset { n, a, dual, crossings, leq }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Greatest element of `subset`, if any.
    pub fn greatest(&self, subset: &[usize]) -> Option<usize> {
        subset.iter().copied().find(|&k| subset.iter().all(|&j| self.leq[j][k]))
    }

    pub fn least(&self, subset: &[usize]) -> Option<usize> {
        subset.iter().copied().find(|&k| subset.iter().all(|&j| self.leq[k][j]))
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&k| self.leq[i][k] && self.leq[j][k]).collect();
        self.least(&upper)
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq[k][i] && self.leq[k][j]).collect();
        self.greatest(&lower)
    }

    /// Checks that the poset is a lattice with the Reineke crossings as a
    /// sublattice; returns a description of the first failure.
    pub fn check_lattice(&self) -> std::result::Result<(), String> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                let (Some(up), Some(down)) = (self.join(i, j), self.meet(i, j)) else {
                    return Err(format!("crossings {i} and {j} lack a join or meet"));
                };
                if self.crossings[i].reineke
                    && self.crossings[j].reineke
                    && !(self.crossings[up].reineke && self.crossings[down].reineke)
                {
                    return Err(format!("Reineke crossings {i} and {j} have a non-Reineke join or meet"));
                }
            }
        }
        Ok(())
    }

    /// Evaluates every form and returns the maximum with the indices attaining it.
    pub fn argmax(&self, values: &[i64]) -> (i64, Vec<usize>) {
        let vals: Vec<i64> = self.crossings.iter().map(|c| c.evaluate(values)).collect();
        let best = vals.iter().copied().max().unwrap_or(0);
        let arg = (0..vals.len()).filter(|&k| vals[k] == best).collect();
        (best, arg)
    }

    pub fn reineke_vectors(&self) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = self
            .crossings
            .iter()
            .filter(|c| c.reineke)
            .map(|c| c.rvec.clone())
            .collect();
        set.into_iter().collect()
    }

    pub fn to_json(&self, word: &ReducedWord) -> Vec<CrossingJson> {
        let order = words::convex_order(word);
        self.crossings
            .iter()
            .map(|c| CrossingJson {
                tiles: c.pairs(self.n).into_iter().map(|(s, t)| [s, t]).collect(),
                strips: c.strips.clone(),
                dual: c.dual,
                reineke: c.reineke,
                rvec: order
                    .iter()
                    .map(|&(s, t)| c.rvec[words::root_index(self.n, s, t)])
                    .collect(),
            })
            .collect()
    }
}

/// Builds the crossing data of one tile path.
fn make_crossing(
    tiling: &Tiling,
    a: u8,
    dual: bool,
    path: Vec<TileId>,
    entry: Edge,
    exit: Edge,
) -> Result<Crossing> {
    let big_n = tiling.num_tiles();
    let mut labels = vec![entry.label];
    for w in path.windows(2) {
        let e = tiling
            .shared_edge(w[0], w[1])
            .ok_or_else(|| Error::Invariant("crossing path is not a neighbour sequence".into()))?;
        labels.push(e.label);
    }
    labels.push(exit.label);
    let mut rvec = vec![0i64; big_n];
    let mut reineke = true;
    for (j, &tile) in path.iter().enumerate() {
        let (l_in, l_out) = (labels[j], labels[j + 1]);
        let t = tiling.tile(tile);
        if l_in != l_out {
            ensure!(
                t.has_label(l_in) && t.has_label(l_out),
                "turn at a tile not labelled by both strips"
            );
            rvec[tile] = (l_out as i64 - l_in as i64).signum();
        } else if j > 0 && j + 1 < path.len() {
            let s = l_in;
            let other = t.other_label(s);
            if (other <= a && s < other) || (other > a && s > other) {
                reineke = false;
            }
        }
    }
    let mut strips = labels.clone();
    strips.dedup();
    let mut form = vec![0i64; big_n];
    for &tile in &path {
        let eb = epsilon_bar(a, tiling.tile(tile).pair());
        if eb == 1 {
            form[tile] = 1;
        } else if rvec[tile] == 0 {
            form[tile] = -1;
        }
    }
    let sides = tiling.sides(&path, entry, exit)?;
    let closure = (0..big_n)
        .filter(|&k| sides[k] != Side::Right)
        .fold(0u64, |m, k| m | 1 << k);
    Ok(Crossing { dual, a, tiles: path, strips, rvec, form, reineke, closure })
}

/// All κ-ascending neighbour sequences from `start` to `end`.
fn ascending_paths(tiling: &Tiling, level: &[usize], start: TileId, end: TileId) -> Vec<Vec<TileId>> {
    let mut out = Vec::new();
    let mut path = vec![start];
    fn go(tiling: &Tiling, level: &[usize], end: TileId, path: &mut Vec<TileId>, out: &mut Vec<Vec<TileId>>) {
        let cur = *path.last().expect("non-empty path");
        if cur == end {
            out.push(path.clone());
            return;
        }
        for (next, _) in tiling.neighbours(cur) {
            if level[next] > level[cur] && level[next] <= level[end] {
                path.push(next);
                go(tiling, level, end, path, out);
                path.pop();
            }
        }
    }
    go(tiling, level, end, &mut path, &mut out);
    out.sort();
    out
}

/// The primal `a`-crossings of a tiling.
pub fn primal_crossings(tiling: &Tiling, a: u8) -> Result<CrossingPoset> {
    primal_as(tiling, a, false)
}

fn primal_as(tiling: &Tiling, a: u8, dual: bool) -> Result<CrossingPoset> {
    check_letter(tiling.n(), a)?;
    let kappa = tiling.kappa(a as usize)?;
    let start = tiling.strip(a)[0];
    let end = tiling.strip(a + 1)[0];
    let (entry, exit) = (tiling.boundary_edge(a as usize), tiling.boundary_edge(a as usize + 1));
    let crossings = ascending_paths(tiling, &kappa.level, start, end)
        .into_iter()
        .map(|p| make_crossing(tiling, a, dual, p, entry, exit))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossingPoset::new(tiling.n(), a, dual, crossings))
}

/// Dual `a`-crossings of `T_i`, computed as primal crossings of `T_{i*}`.
pub fn dual_crossings(word: &ReducedWord, a: u8) -> Result<CrossingPoset> {
    primal_as(&Tiling::new(&word.star()), a, true)
}

/// Dual `a`-crossings enumerated directly in `T_i`: κ_{n+a}-ascending paths
/// from the last tile of strip `a` to the last tile of strip `a+1`.
pub fn direct_dual_crossings(tiling: &Tiling, a: u8) -> Result<CrossingPoset> {
    check_letter(tiling.n(), a)?;
    let n = tiling.n();
    let kappa = tiling.kappa(n + a as usize)?;
    let start = *tiling.strip(a).last().expect("strips are non-empty");
    let end = *tiling.strip(a + 1).last().expect("strips are non-empty");
    let (entry, exit) = (tiling.boundary_edge(n + a as usize), tiling.boundary_edge(n + a as usize + 1));
    let crossings = ascending_paths(tiling, &kappa.level, start, end)
        .into_iter()
        .map(|p| make_crossing(tiling, a, true, p, entry, exit))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossingPoset::new(n, a, true, crossings))
}

/// Crystal operators on Lusztig data of one word via the crossing formulas.
#[derive(Clone, Debug)]
pub struct CrossingCrystal {
    word: ReducedWord,
    tiling: Tiling,
    primal: Vec<CrossingPoset>,
    dual: Vec<CrossingPoset>,
}

impl CrossingCrystal {
    pub fn new(word: &ReducedWord) -> Result<Self> {
        let tiling = Tiling::new(word);
        let star = Tiling::new(&word.star());
        let letters = 1..word.n() as u8;
        let primal = letters.clone().map(|a| primal_as(&tiling, a, false)).collect::<Result<_>>()?;
        let dual = letters.map(|a| primal_as(&star, a, true)).collect::<Result<_>>()?;
        Ok(CrossingCrystal { word: word.clone(), tiling, primal, dual })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn poset(&self, a: u8, dual: bool) -> &CrossingPoset {
        let list = if dual { &self.dual } else { &self.primal };
        &list[a as usize - 1]
    }

    fn check(&self, a: u8, x: &LusztigDatum) -> Result<()> {
        check_letter(self.word.n(), a)?;
        if x.word() != &self.word {
            return Err(Error::Malformed(format!(
                "datum anchored to {} but the crystal uses {}",
                x.word(),
                self.word
            )));
        }
        Ok(())
    }

    fn eps_in(&self, a: u8, dual: bool, x: &LusztigDatum) -> Result<i64> {
        self.check(a, x)?;
        Ok(self.poset(a, dual).argmax(x.values()).0)
    }

    fn f_in(&self, a: u8, dual: bool, x: &LusztigDatum) -> Result<LusztigDatum> {
        self.check(a, x)?;
        let poset = self.poset(a, dual);
        let (_, arg) = poset.argmax(x.values());
        let k = poset
            .greatest(&arg)
            .ok_or_else(|| Error::Invariant(format!("no greatest maximising crossing for a = {a}")))?;
        let gamma = &poset.crossings[k];
        ensure!(gamma.reineke, "selected crossing {:?} is not Reineke", gamma.strips);
        let values: Vec<i64> = x.values().iter().zip(&gamma.rvec).map(|(v, r)| v + r).collect();
        ensure!(values.iter().all(|&v| v >= 0), "f produced a negative value");
        LusztigDatum::new(self.word.clone(), values)
    }

    fn e_in(&self, a: u8, dual: bool, x: &LusztigDatum) -> Result<Option<LusztigDatum>> {
        self.check(a, x)?;
        let poset = self.poset(a, dual);
        let (best, arg) = poset.argmax(x.values());
        if best <= 0 {
            return Ok(None);
        }
        let k = poset
            .least(&arg)
            .ok_or_else(|| Error::Invariant(format!("no least maximising crossing for a = {a}")))?;
        let gamma = &poset.crossings[k];
        ensure!(gamma.reineke, "selected crossing {:?} is not Reineke", gamma.strips);
        let values: Vec<i64> = x.values().iter().zip(&gamma.rvec).map(|(v, r)| v - r).collect();
        ensure!(values.iter().all(|&v| v >= 0), "e produced a negative value");
        Ok(Some(LusztigDatum::new(self.word.clone(), values)?))
    }

    pub fn eps(&self, a: u8, x: &LusztigDatum) -> Result<i64> {
        self.eps_in(a, false, x)
    }

    pub fn f(&self, a: u8, x: &LusztigDatum) -> Result<LusztigDatum> {
        self.f_in(a, false, x)
    }

    pub fn e(&self, a: u8, x: &LusztigDatum) -> Result<Option<LusztigDatum>> {
        self.e_in(a, false, x)
    }

    pub fn eps_star(&self, a: u8, x: &LusztigDatum) -> Result<i64> {
        self.eps_in(a, true, x)
    }

    pub fn f_star(&self, a: u8, x: &LusztigDatum) -> Result<LusztigDatum> {
        self.f_in(a, true, x)
    }

    pub fn e_star(&self, a: u8, x: &LusztigDatum) -> Result<Option<LusztigDatum>> {
        self.e_in(a, true, x)
    }

    pub fn apply(&self, op: CrystalOp, a: u8, x: &LusztigDatum) -> Result<OpOutcome> {
        let dual = op.is_star();
        Ok(match op.unstarred() {
            CrystalOp::F => OpOutcome::Datum(self.f_in(a, dual, x)?),
            CrystalOp::E => match self.e_in(a, dual, x)? {
                Some(y) => OpOutcome::Datum(y),
                None => OpOutcome::Undefined,
            },
            _ => OpOutcome::Value(self.eps_in(a, dual, x)?),
        })
    }

    /// Membership in the highest weight crystal `B(lambda)`: every dual
    /// crossing form stays at most `lambda_a`.
    pub fn in_highest_weight(&self, x: &LusztigDatum, lambda: &[i64]) -> Result<bool> {
        if lambda.len() + 1 != self.word.n() {
            return Err(Error::Malformed(format!("weight needs {} entries", self.word.n() - 1)));
        }
        for a in 1..self.word.n() as u8 {
            if self.eps_star(a, x)? > lambda[a as usize - 1] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All elements of `B(lambda)`, generated from `0` with `f_a`.
    pub fn highest_weight_crystal(&self, lambda: &[i64]) -> Result<Vec<LusztigDatum>> {
        let zero = LusztigDatum::zero(&self.word);
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(zero.values().to_vec());
        let mut frontier = vec![zero.clone()];
        let mut out = vec![zero];
        while let Some(x) = frontier.pop() {
            for a in 1..self.word.n() as u8 {
                let y = self.f(a, &x)?;
                if self.in_highest_weight(&y, lambda)? && seen.insert(y.values().to_vec()) {
                    frontier.push(y.clone());
                    out.push(y);
                }
            }
        }
        Ok(out)
    }
}

/// `prod_{s<t} (t - s + lambda_s + ... + lambda_{t-1}) / (t - s)`
pub fn weyl_dimension(lambda: &[i64]) -> u128 {
    let n = lambda.len() + 1;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for s in 1..=n {
        for t in s + 1..=n {
            let shift: i64 = lambda[s - 1..t - 1].iter().sum();
            num *= (t - s) as u128 + shift as u128;
            den *= (t - s) as u128;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> ReducedWord {
        text.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&[1, 1]), 8);
        assert_eq!(weyl_dimension(&[1, 0]), 3);
        assert_eq!(weyl_dimension(&[2, 2, 2]), 729);
    }

    #[test]
    fn small_crossings() {
        let t = Tiling::new(&w("121"));
        let p = primal_crossings(&t, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.crossings[0].pairs(3), vec![(1, 2)]);
        let d = dual_crossings(&w("121"), 1).unwrap();
        let mut got: Vec<(Vec<Pair>, Vec<u8>)> = d.crossings.iter().map(|c| (c.pairs(3), c.strips.clone())).collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                (vec![(1, 3), (1, 2), (2, 3)], vec![1, 2]),
                (vec![(1, 3), (2, 3)], vec![1, 3, 2]),
            ]
        );
        let p = primal_crossings(&t, 2).unwrap();
        let long = p.crossings.iter().find(|c| c.strips == vec![2, 3]).unwrap();
        assert_eq!(long.pairs(3), vec![(1, 2), (2, 3), (1, 3)]);
        // x_23 + x_13 - x_12
        let mut form = vec![0; 3];
        form[words::root_index(3, 2, 3)] = 1;
        form[words::root_index(3, 1, 3)] = 1;
        form[words::root_index(3, 1, 2)] = -1;
        assert_eq!(long.form, form);
    }

    #[test]
    fn crystal_example() {
        let c = CrossingCrystal::new(&w("212")).unwrap();
        let x = LusztigDatum::from_word_coords(&w("212"), &[3, 1, 2]).unwrap();
        assert_eq!(c.f(1, &x).unwrap().word_coords(), vec![2, 2, 2]);
        assert_eq!(c.eps(1, &x).unwrap(), 1);
    }
}
