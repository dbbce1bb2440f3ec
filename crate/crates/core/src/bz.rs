//! BZ data: integer functions on proper subsets of `[n]`, their validation,
//! the tropical Chamber Ansatz to Lusztig data and back, and the crystal
//! operator `f_a` acting on them directly.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::crossings::CrossingCrystal;
use crate::error::ensure;
use crate::linalg;
use crate::lusztig::{check_letter, transition_along, LusztigDatum};
use crate::report::Report;
use crate::sets::{self, Subset};
use crate::tiling::Tiling;
use crate::words::{self, Permutation, ReducedWord, WordMove};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BzDatum {
    n: usize,
    /// Indexed by subset bitmask; `z_empty = z_[n] = 0`.
    values: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BzJson {
    pub n: usize,
    pub values: BTreeMap<String, i64>,
}

impl BzDatum {
    pub fn zero(n: usize) -> Self {
        BzDatum { n, values: vec![0; 1 << n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, set: Subset) -> i64 {
        self.values[set as usize]
    }

    pub fn set(&mut self, set: Subset, value: i64) {
        if set != 0 && set != sets::full(self.n) {
            self.values[set as usize] = value;
        }
    }

    /// Nonempty proper subsets in numeric order.
    pub fn domain(n: usize) -> impl Iterator<Item = Subset> {
        sets::all(n).filter(move |&s| s != 0 && s != sets::full(n))
    }

    pub fn to_json(&self) -> BzJson {
        let values = Self::domain(self.n).map(|s| (sets::format(s), self.get(s))).collect();
        BzJson { n: self.n, values }
    }

    pub fn from_json(json: &BzJson) -> Result<Self> {
        if !(2..=words::ENUMERATION_LIMIT).contains(&json.n) {
            return Err(Error::Malformed(format!("unsupported n = {}", json.n)));
        }
        let mut z = BzDatum::zero(json.n);
        let mut seen = 0;
        for (key, &v) in &json.values {
            let s = sets::parse(key, json.n)?;
            if s == 0 || s == sets::full(json.n) {
                return Err(Error::Malformed(format!("subset {{{key}}} is not proper and nonempty")));
            }
            z.set(s, v);
            seen += 1;
        }
        let expected = (1usize << json.n) - 2;
        if seen != expected {
            return Err(Error::Malformed(format!("expected {expected} subset keys, found {seen}")));
        }
        Ok(z)
    }
}

fn swap_set(set: Subset, a: u8) -> Subset {
    let (x, y) = (sets::contains(set, a), sets::contains(set, a + 1));
    let cleared = set & !(sets::bit(a) | sets::bit(a + 1));
    cleared | if x { sets::bit(a + 1) } else { 0 } | if y { sets::bit(a) } else { 0 }
}

/// `sigma_a S = (S - {a}) + {a+1}`.
pub fn sigma(a: u8, set: Subset) -> Subset {
    (set & !sets::bit(a)) | sets::bit(a + 1)
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    fn rec(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        if k == cur.len() {
            out.push(Permutation(cur.clone()));
            return;
        }
        for j in k..cur.len() {
            cur.swap(k, j);
            rec(k + 1, cur, out);
            cur.swap(k, j);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Checks normalization, all edge inequalities and the tropical Plucker
/// relations for adjacent `a, b`.
pub fn validate_bz(z: &BzDatum) -> Report {
    let n = z.n;
    let mut report = Report::new("bz validation");
    for a in 1..n {
        let s = sets::suffix(n, a);
        report.expect(z.get(s) == 0, || format!("normalization: z_{{{}}} = {}", sets::format(s), z.get(s)));
    }
    for w in all_permutations(n) {
        let at = |set: Subset| z.get(w.apply_set(set));
        for a in 1..n as u8 {
            let pa = sets::prefix(a as usize);
            let lhs = at(pa) + at(swap_set(pa, a)) - at(sets::prefix(a as usize - 1)) - at(sets::prefix(a as usize + 1));
            report.expect(lhs <= 0, || format!("edge inequality fails at sigma = {:?}, a = {a}: {lhs} > 0", w.0));
        }
        for a in 1..n as u8 {
            for b in [a.wrapping_sub(1), a + 1] {
                if b == 0 || b as usize >= n {
                    continue;
                }
                if w.apply(a) > w.apply(a + 1) || w.apply(b) > w.apply(b + 1) {
                    continue;
                }
                let (lhs, rhs) = plucker_sides(z, &w, a, b);
                report.expect(lhs == rhs, || {
                    format!("Plucker relation fails at sigma = {:?}, a = {a}, b = {b}: {lhs} != {rhs}", w.0)
                });
            }
        }
    }
    report
}

/// Both sides of the tropical Plucker relation at `(sigma, a, b)`:
/// `z_{s s_a [a]} + z_{s s_b [b]}` and
/// `min(z_{s[a]} + z_{s s_a s_b [b]}, z_{s[b]} + z_{s s_b s_a [a]})`.
pub fn plucker_sides(z: &BzDatum, w: &Permutation, a: u8, b: u8) -> (i64, i64) {
    let at = |set: Subset| z.get(w.apply_set(set));
    let (pa, pb) = (sets::prefix(a as usize), sets::prefix(b as usize));
    let lhs = at(swap_set(pa, a)) + at(swap_set(pb, b));
    let rhs = (at(pa) + at(swap_set(swap_set(pb, b), a))).min(at(pb) + at(swap_set(swap_set(pa, a), b)));
    (lhs, rhs)
}

/// `x_T = z_o + z_u - z_l - z_r` for every tile of the word's tiling.
pub fn trop_chamber_ansatz(z: &BzDatum, word: &ReducedWord) -> Result<LusztigDatum> {
    if word.n() != z.n {
        return Err(Error::RankMismatch(word.n(), z.n));
    }
    let tiling = Tiling::new(word);
    let mut values = vec![0; words::num_roots(z.n)];
    for tile in tiling.tiles() {
        let v = z.get(tile.top()) + z.get(tile.bottom()) - z.get(tile.left()) - z.get(tile.right());
        if v < 0 {
            return Err(Error::InvalidBz(format!(
                "tile [{},{}] gets {v} from the chamber ansatz",
                tile.s, tile.t
            )));
        }
        values[words::root_index(z.n, tile.s, tile.t)] = v;
    }
    LusztigDatum::new(word.clone(), values)
}

/// Inverse of the chamber ansatz on one tiling: unknowns are the vertices
/// off the right boundary.
struct Chart {
    word: ReducedWord,
    unknowns: Vec<Subset>,
    tile_roots: Vec<usize>,
    inverse: Vec<Vec<i64>>,
}

impl Chart {
    fn new(word: ReducedWord) -> Result<Self> {
        let n = word.n();
        let tiling = Tiling::new(&word);
        let unknowns: Vec<Subset> = tiling.vertices().into_iter().filter(|&v| !tiling.on_right_boundary(v)).collect();
        ensure!(unknowns.len() == tiling.num_tiles(), "chart for {word} is not square");
        let column: HashMap<Subset, usize> = unknowns.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut matrix = Vec::new();
        let mut tile_roots = Vec::new();
        for tile in tiling.tiles() {
            let mut row = vec![0; unknowns.len()];
            for (v, c) in [(tile.top(), 1), (tile.bottom(), 1), (tile.left(), -1), (tile.right(), -1)] {
                if let Some(&k) = column.get(&v) {
                    row[k] += c;
                }
            }
            matrix.push(row);
            tile_roots.push(words::root_index(n, tile.s, tile.t));
        }
        let inverse = linalg::unimodular_inverse(&matrix)?;
        Ok(Chart { word, unknowns, tile_roots, inverse })
    }

    fn solve(&self, values: &[i64]) -> Vec<(Subset, i64)> {
        let rhs: Vec<i64> = self.tile_roots.iter().map(|&r| values[r]).collect();
        self.unknowns.iter().copied().zip(linalg::mat_vec(&self.inverse, &rhs)).collect()
    }
}

struct Atlas {
    charts: Vec<Chart>,
    paths: Mutex<HashMap<(Vec<u8>, usize), Arc<Vec<WordMove>>>>,
}

impl Atlas {
    fn new(n: usize) -> Result<Self> {
        let mut charts: Vec<Chart> = Vec::new();
        for s in BzDatum::domain(n) {
            if sets::is_suffix(n, s) || charts.iter().any(|c| c.unknowns.contains(&s)) {
                continue;
            }
            let word = find_word_with_vertex(s, n)?;
            charts.push(Chart::new(word)?);
        }
        Ok(Atlas { charts, paths: Mutex::new(HashMap::new()) })
    }

    fn path(&self, from: &ReducedWord, k: usize) -> Result<Arc<Vec<WordMove>>> {
        let key = (from.letters().to_vec(), k);
        if let Some(p) = self.paths.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(words::move_path(from, &self.charts[k].word)?);
        self.paths.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }
}

fn atlas(n: usize) -> Result<Arc<Atlas>> {
    static ATLASES: OnceLock<Mutex<HashMap<usize, Arc<Atlas>>>> = OnceLock::new();
    let cell = ATLASES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(a) = cell.lock().unwrap().get(&n) {
        return Ok(a.clone());
    }
    let a = Arc::new(Atlas::new(n)?);
    cell.lock().unwrap().insert(n, a.clone());
    Ok(a)
}

/// A word whose tiling has `S` as a vertex; searches all words if the
/// direct construction misses.
pub fn find_word_with_vertex(set: Subset, n: usize) -> Result<ReducedWord> {
    let word = words::word_with_vertex(n, set)?;
    if Tiling::new(&word).vertices().contains(&set) {
        return Ok(word);
    }
    words::enumerate_reduced_words(n)?
        .into_iter()
        .find(|w| Tiling::new(w).vertices().contains(&set))
        .ok_or_else(|| Error::Invariant(format!("no tiling has vertex {{{}}}", sets::format(set))))
}

/// Solves the chamber ansatz for `z` on a family of tilings covering every
/// subset, transporting `x` to each; the overlaps must agree.
pub fn bz_from_lusztig(x: &LusztigDatum) -> Result<BzDatum> {
    let n = x.n();
    let atlas = atlas(n)?;
    let mut z = BzDatum::zero(n);
    let mut known = vec![false; 1 << n];
    for (k, chart) in atlas.charts.iter().enumerate() {
        let y = transition_along(x, &atlas.path(x.word(), k)?)?;
        for (s, v) in chart.solve(y.values()) {
            if known[s as usize] {
                ensure!(
                    z.get(s) == v,
                    "z_{{{}}} is {} on one tiling and {v} on {}",
                    sets::format(s),
                    z.get(s),
                    chart.word
                );
            } else {
                z.set(s, v);
                known[s as usize] = true;
            }
        }
    }
    Ok(z)
}

/// `f_a` on BZ data: lowers `z_S` by one exactly when `a in S`, `a+1 notin S`
/// and `z_S - z_{sigma_a S} >= z_[a] - z_{sigma_a [a]}`. Fails if the
/// opposite strict inequality is found for such an `S`.
pub fn bz_crystal_f(a: u8, z: &BzDatum) -> Result<BzDatum> {
    check_letter(z.n, a)?;
    let pa = sets::prefix(a as usize);
    let bound = z.get(pa) - z.get(sigma(a, pa));
    let mut out = z.clone();
    for s in BzDatum::domain(z.n) {
        if !sets::contains(s, a) || sets::contains(s, a + 1) {
            continue;
        }
        let d = z.get(s) - z.get(sigma(a, s));
        if d > bound {
            return Err(Error::InvalidBz(format!(
                "z_S - z_sigma(S) = {d} exceeds {bound} at S = {{{}}}",
                sets::format(s)
            )));
        }
        if d == bound {
            out.set(s, z.get(s) - 1);
        }
    }
    Ok(out)
}

/// The decrement `max(0, z_S - z_{sigma_a S} + z_{sigma_a [a]} - z_[a] + 1)`
/// for `a in S`, `a+1 notin S`, else `0`.
pub fn am_decrement(a: u8, z: &BzDatum, s: Subset) -> i64 {
    if !sets::contains(s, a) || sets::contains(s, a + 1) {
        return 0;
    }
    let pa = sets::prefix(a as usize);
    (z.get(s) - z.get(sigma(a, s)) + z.get(sigma(a, pa)) - z.get(pa) + 1).max(0)
}

/// Compares `f_a` computed through Lusztig data with [`bz_crystal_f`] and
/// the decrement formula, for every subset.
pub fn am_check(crystal: &CrossingCrystal, a: u8, x: &LusztigDatum, report: &mut Report) -> Result<()> {
    let z = bz_from_lusztig(x)?;
    let fx = crystal.f(a, x)?;
    let want = bz_from_lusztig(&fx)?;
    let got = match bz_crystal_f(a, &z) {
        Ok(g) => g,
        Err(e) => {
            report.fail(format!("{x}, a = {a}: {e}"));
            return Ok(());
        }
    };
    for s in BzDatum::domain(z.n) {
        let d = z.get(s) - want.get(s);
        report.expect(d == 0 || d == 1, || format!("{x}, a = {a}: decrement {d} at {{{}}}", sets::format(s)));
        report.expect(got.get(s) == want.get(s), || {
            format!("{x}, a = {a}: z'_{{{}}} is {} but f_a gives {}", sets::format(s), got.get(s), want.get(s))
        });
        report.expect(am_decrement(a, &z, s) == d, || {
            format!("{x}, a = {a}: decrement formula {} != {d} at {{{}}}", am_decrement(a, &z, s), sets::format(s))
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> ReducedWord {
        text.parse().unwrap()
    }

    fn z3(pairs: &[(&str, i64)]) -> BzDatum {
        let mut z = BzDatum::zero(3);
        for (k, v) in pairs {
            z.set(sets::parse(k, 3).unwrap(), *v);
        }
        z
    }

    #[test]
    fn zero_is_valid() {
        for n in 2..=4 {
            assert!(validate_bz(&BzDatum::zero(n)).ok());
        }
    }

    #[test]
    fn edge_inequality_violation() {
        let r = validate_bz(&z3(&[("1", 1)]));
        assert!(!r.ok());
        assert!(r.failures.iter().any(|f| f.contains("edge inequality") && f.contains("[1, 2, 3]") && f.contains("a = 1")));
    }

    #[test]
    fn chamber_ansatz_examples() {
        let z = z3(&[("1", -1), ("1,3", -1)]);
        let x = trop_chamber_ansatz(&z, &w("121")).unwrap();
        assert_eq!(x.word_coords(), vec![1, 0, 0]);
        assert_eq!(trop_chamber_ansatz(&BzDatum::zero(3), &w("212")).unwrap().word_coords(), vec![0, 0, 0]);
    }

    #[test]
    fn words_with_vertices() {
        assert!(Tiling::new(&find_word_with_vertex(sets::from_elements(&[2]), 3).unwrap()).vertices().contains(&0b010));
        assert_eq!(find_word_with_vertex(sets::from_elements(&[1, 3]), 3).unwrap(), w("212"));
        assert_eq!(find_word_with_vertex(sets::from_elements(&[2]), 3).unwrap(), w("121"));
    }

    #[test]
    fn from_lusztig_and_f() {
        let word = w("121");
        let c = CrossingCrystal::new(&word).unwrap();
        let zero = LusztigDatum::zero(&word);
        assert_eq!(bz_from_lusztig(&zero).unwrap(), BzDatum::zero(3));
        let f1 = c.f(1, &zero).unwrap();
        let want = z3(&[("1", -1), ("1,3", -1)]);
        assert_eq!(bz_from_lusztig(&f1).unwrap(), want);
        assert_eq!(bz_crystal_f(1, &BzDatum::zero(3)).unwrap(), want);
    }

    #[test]
    fn json_round_trip() {
        let z = z3(&[("1", -1), ("1,3", -1)]);
        let text = serde_json::to_string(&z.to_json()).unwrap();
        assert!(text.contains("\"1,3\":-1"));
        let back = BzDatum::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, z);
        let mut short = z.to_json();
        short.values.remove("2");
        assert!(BzDatum::from_json(&short).is_err());
    }
}
