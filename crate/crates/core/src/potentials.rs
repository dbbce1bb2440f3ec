//! Rational functions on the tori attached to a word: the functions `r_a`
//! built from Reineke vectors, their geometric transition maps, the exchange
//! quiver, the dual Chamber Ansatz and Neighbour Ansatz, the GHKK and BK
//! potentials, and exact checks of the identities relating them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::crossings::CrossingCrystal;
use crate::error::ensure;
use crate::linalg;
use crate::lusztig::{braid_labels, check_letter};
use crate::report::Report;
use crate::sets::{self, Subset};
use crate::strings::{self, Cone};
use crate::tiling::Tiling;
use crate::words::{self, MoveKind, ReducedWord, WordMove};
use crate::{Error, Result};

pub type Rational = BigRational;

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("bad rational {text:?}"));
    let (p, q) = match text.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn pow(x: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && x.is_zero() {
        return Err(Error::Malformed("negative power of zero".into()));
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut out = Rational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    Ok(out)
}

/// Integer-coefficient Laurent polynomial in named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    pub coords: Vec<String>,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaurentJson {
    pub coords: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl LaurentPolynomial {
    pub fn new(coords: Vec<String>) -> Self {
        LaurentPolynomial { coords, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exp: Vec<i64>, coeff: i64) {
        assert_eq!(exp.len(), self.coords.len(), "exponent arity");
        let c = self.terms.entry(exp.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.coords.len() {
            return Err(Error::Malformed(format!("point needs {} coordinates", self.coords.len())));
        }
        let mut total = Rational::zero();
        for (exp, &c) in &self.terms {
            let mut term = Rational::from_integer(BigInt::from(c));
            for (x, &e) in point.iter().zip(exp) {
                if e != 0 {
                    term *= pow(x, e)?;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Min-plus shadow: `min` over terms of `exp . z`.
    pub fn tropicalize(&self, z: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().zip(z).map(|(a, b)| a * b).sum()).min()
    }

    /// `{z : exp . z >= 0 for every term}`.
    pub fn cone(&self) -> Cone {
        Cone { coords: self.coords.clone(), rows: self.terms.keys().cloned().collect() }
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(|e| e.iter().all(|&v| v == 0))
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            coords: self.coords.clone(),
            terms: self.terms.iter().map(|(e, &c)| TermJson { exp: e.clone(), coeff: c }).collect(),
        }
    }

    pub fn from_json(json: &LaurentJson) -> Result<Self> {
        let mut p = LaurentPolynomial::new(json.coords.clone());
        for t in &json.terms {
            if t.exp.len() != json.coords.len() {
                return Err(Error::Malformed("term arity differs from coordinates".into()));
            }
            p.add_term(t.exp.clone(), t.coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, &c) in &self.terms {
            let mut factors = Vec::new();
            for (name, &e) in self.coords.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => factors.push(format!("x[{name}]")),
                    e => factors.push(format!("x[{name}]^{e}")),
                }
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (mag, factors.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{}", factors.join(" "))?,
                (_, false) => write!(f, "{mag} {}", factors.join(" "))?,
            }
        }
        Ok(())
    }
}

/// `y_i = prod_j x_j^{matrix[i][j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

impl MonomialMap {
    pub fn apply(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        if point.len() != self.source.len() {
            return Err(Error::Malformed(format!("point needs {} coordinates", self.source.len())));
        }
        self.matrix
            .iter()
            .map(|row| {
                let mut y = Rational::one();
                for (x, &e) in point.iter().zip(row) {
                    if e != 0 {
                        y *= pow(x, e)?;
                    }
                }
                Ok(y)
            })
            .collect()
    }

    pub fn tropical(&self, z: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.matrix, z)
    }

    /// Pushes a Laurent polynomial in the target coordinates back to the
    /// source: `y^m = x^{M^T m}`.
    pub fn pull_back(&self, p: &LaurentPolynomial) -> LaurentPolynomial {
        let t = linalg::transpose(&self.matrix);
        let mut out = LaurentPolynomial::new(self.source.clone());
        for (exp, &c) in &p.terms {
            out.add_term(linalg::mat_vec(&t, exp), c);
        }
        out
    }
}

pub fn tile_coords(word: &ReducedWord) -> Vec<String> {
    words::convex_order(word).into_iter().map(words::format_pair).collect()
}

/// Vertices of the tiling off its left boundary, in numeric order.
pub fn cluster_vertices(tiling: &Tiling) -> Vec<Subset> {
    tiling.vertices().into_iter().filter(|&v| !tiling.on_left_boundary(v)).collect()
}

pub fn vertex_coords(vertices: &[Subset]) -> Vec<String> {
    vertices.iter().map(|&v| sets::format(v)).collect()
}

fn root_positions(word: &ReducedWord) -> Vec<usize> {
    words::convex_order(word).into_iter().map(|(s, t)| words::root_index(word.n(), s, t)).collect()
}

/// Word-ordered coordinates to root-indexed ones.
pub fn word_to_roots<T: Clone + Default>(word: &ReducedWord, point: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); point.len()];
    for (k, r) in root_positions(word).into_iter().enumerate() {
        out[r] = point[k].clone();
    }
    out
}

pub fn roots_to_word<T: Clone>(word: &ReducedWord, values: &[T]) -> Vec<T> {
    root_positions(word).into_iter().map(|r| values[r].clone()).collect()
}

/// `r_{a,i}` (sum of `x^y` over dual Reineke vectors, tile coordinates) when
/// `dual`, else the sum of `x_k` over positions with `i_k = a`.
pub fn reineke_poly(crystal: &CrossingCrystal, a: u8, dual: bool) -> Result<LaurentPolynomial> {
    let word = crystal.word();
    check_letter(word.n(), a)?;
    let mut p = LaurentPolynomial::new(tile_coords(word));
    if dual {
        for y in crystal.poset(a, true).reineke_vectors() {
            p.add_term(roots_to_word(word, &y), 1);
        }
        ensure!(p.terms.values().all(|&c| c == 1), "r_{a} has a coefficient other than 1");
        ensure!(p.terms.keys().flatten().all(|e| (-1..=1).contains(e)), "r_{a} has an exponent outside -1..1");
    } else {
        for (k, &l) in word.letters().iter().enumerate() {
            if l == a {
                let mut e = vec![0; word.len()];
                e[k] = 1;
                p.add_term(e, 1);
            }
        }
    }
    Ok(p)
}

/// One flip of the geometric lift of the string transition on root-indexed
/// values. For a `(a, a+1, a)` segment the rule is
/// `y_st = (x_st x_tu + x_su) / x_tu`, `y_su = x_st x_tu`,
/// `y_tu = x_su x_tu / (x_st x_tu + x_su)`; the other direction is its
/// inverse, the same rule with `st` and `tu` exchanged.
pub fn trs_step(values: &mut [Rational], n: usize, lower: bool, (s, t, u): (u8, u8, u8)) {
    let (mut st, su, mut tu) = (words::root_index(n, s, t), words::root_index(n, s, u), words::root_index(n, t, u));
    if !lower {
        std::mem::swap(&mut st, &mut tu);
    }
    let (a, b, c) = (values[st].clone(), values[su].clone(), values[tu].clone());
    let ac = &a * &c;
    let den = &ac + &b;
    values[st] = &den / &c;
    values[su] = ac;
    values[tu] = &b * &c / den;
}

/// One flip of the geometric lift of the Lusztig transition:
/// `y_st = x_st x_su / (x_st + x_tu)`, `y_su = x_st + x_tu`,
/// `y_tu = x_su x_tu / (x_st + x_tu)`. It is an involution.
pub fn trl_step(values: &mut [Rational], n: usize, (s, t, u): (u8, u8, u8)) {
    let (st, su, tu) = (words::root_index(n, s, t), words::root_index(n, s, u), words::root_index(n, t, u));
    let (a, b, c) = (values[st].clone(), values[su].clone(), values[tu].clone());
    let den = &a + &c;
    values[st] = &a * &b / &den;
    values[su] = den.clone();
    values[tu] = &b * &c / den;
}

fn eval_transition(i: &ReducedWord, j: &ReducedWord, point: &[Rational], string: bool) -> Result<Vec<Rational>> {
    if point.len() != i.len() {
        return Err(Error::Malformed(format!("point needs {} coordinates", i.len())));
    }
    ensure!(point.iter().all(|x| x.is_positive()), "transition maps need a positive point");
    let path = words::move_path(i, j)?;
    let mut values = word_to_roots(i, point);
    let mut current = i.clone();
    for mv in path {
        if mv.kind == MoveKind::Braid {
            let labels = braid_labels(&current, mv.position);
            let letters = current.letters();
            let lower = letters[mv.position - 1] < letters[mv.position];
            if string {
                trs_step(&mut values, i.n(), lower, labels);
            } else {
                trl_step(&mut values, i.n(), labels);
            }
        }
        current = words::apply_move(&current, mv)?;
    }
    Ok(roots_to_word(j, &values))
}

/// `trs^i_j` on a positive point in the word coordinates of `i`.
pub fn eval_trs(i: &ReducedWord, j: &ReducedWord, point: &[Rational]) -> Result<Vec<Rational>> {
    eval_transition(i, j, point, true)
}

/// `trl^i_j` on a positive point in the word coordinates of `i`.
pub fn eval_trl(i: &ReducedWord, j: &ReducedWord, point: &[Rational]) -> Result<Vec<Rational>> {
    eval_transition(i, j, point, false)
}

pub fn random_positive_point<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| rational(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect()
}

/// Checks `r_{a,i} = r_{a,j} o trs` and the same for `trl` and the word
/// functions at every point.
pub fn transform_check_rtrans(
    ci: &CrossingCrystal,
    cj: &CrossingCrystal,
    points: &[Vec<Rational>],
    report: &mut Report,
) -> Result<()> {
    let (i, j) = (ci.word(), cj.word());
    for a in 1..i.n() as u8 {
        let (ri, rj) = (reineke_poly(ci, a, true)?, reineke_poly(cj, a, true)?);
        let (li, lj) = (reineke_poly(ci, a, false)?, reineke_poly(cj, a, false)?);
        for x in points {
            let left = ri.evaluate(x)?;
            let right = rj.evaluate(&eval_trs(i, j, x)?)?;
            report.expect(left == right, || {
                format!("r_{a} on {i} -> {j} at {}: {} != {}", show(x), format_rational(&left), format_rational(&right))
            });
            let left = li.evaluate(x)?;
            let right = lj.evaluate(&eval_trl(i, j, x)?)?;
            report.expect(left == right, || {
                format!("word r_{a} on {i} -> {j} at {}: {} != {}", show(x), format_rational(&left), format_rational(&right))
            });
        }
    }
    Ok(())
}

pub fn show(point: &[Rational]) -> String {
    let parts: Vec<String> = point.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

/// Exchange quiver of a tiling; `arrows[(v, w)]` counts arrows `v -> w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeQuiver {
    pub vertices: Vec<Subset>,
    pub frozen: BTreeSet<Subset>,
    pub arrows: BTreeMap<(Subset, Subset), i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub frozen: Vec<String>,
    pub arrows: Vec<(String, String, i64)>,
}

impl ExchangeQuiver {
    /// Net arrow count `#(v -> w) - #(w -> v)`.
    pub fn epsilon(&self, v: Subset, w: Subset) -> i64 {
        self.arrows.get(&(v, w)).copied().unwrap_or(0) - self.arrows.get(&(w, v)).copied().unwrap_or(0)
    }

    /// No arrow leaves the frozen vertex `v` towards a mutable vertex.
    pub fn optimized_for(&self, v: Subset) -> bool {
        !self.arrows.keys().any(|&(from, to)| from == v && !self.frozen.contains(&to))
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: vertex_coords(&self.vertices),
            frozen: self.frozen.iter().map(|&v| sets::format(v)).collect(),
            arrows: self.arrows.iter().map(|(&(a, b), &k)| (sets::format(a), sets::format(b), k)).collect(),
        }
    }
}

pub fn quiver(tiling: &Tiling) -> ExchangeQuiver {
    let vertices = cluster_vertices(tiling);
    let inside: BTreeSet<Subset> = vertices.iter().copied().collect();
    let frozen: BTreeSet<Subset> = vertices.iter().copied().filter(|&v| tiling.on_right_boundary(v)).collect();
    // Orientation demanded of each tiling edge, keyed by its endpoints.
    let mut demanded: BTreeMap<(Subset, Subset), BTreeSet<bool>> = BTreeMap::new();
    let mut arrows: BTreeMap<(Subset, Subset), i64> = BTreeMap::new();
    for tile in tiling.tiles() {
        let (l, r, o, u) = (tile.left(), tile.right(), tile.top(), tile.bottom());
        if inside.contains(&l) {
            *arrows.entry((l, r)).or_insert(0) += 1;
        }
        for (from, to) in [(r, o), (o, l), (r, u), (u, l)] {
            let key = (from.min(to), from.max(to));
            demanded.entry(key).or_default().insert(from < to);
        }
    }
    for ((a, b), dirs) in demanded {
        if dirs.len() != 1 {
            continue;
        }
        let (from, to) = if dirs.contains(&true) { (a, b) } else { (b, a) };
        *arrows.entry((from, to)).or_insert(0) += 1;
    }
    arrows.retain(|&(a, b), _| {
        inside.contains(&a) && inside.contains(&b) && !(frozen.contains(&a) && frozen.contains(&b))
    });
    ExchangeQuiver { vertices, frozen, arrows }
}

/// Tile `[a,a+1]` has two edges on the right boundary.
pub fn is_optimized(tiling: &Tiling, a: u8) -> bool {
    let n = tiling.n();
    tiling.tile_of((a, a + 1)).base == sets::suffix(n, n - a as usize - 1)
}

/// Chamber ansatz matrix: rows are tiles in word order, columns are
/// [`cluster_vertices`]; `+1` at top and bottom, `-1` at left and right.
pub fn chamber_ansatz_matrix(tiling: &Tiling) -> (Vec<Subset>, Vec<Vec<i64>>) {
    let vertices = cluster_vertices(tiling);
    let col: BTreeMap<Subset, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let rows = tiling
        .order()
        .iter()
        .map(|&id| {
            let tile = tiling.tile(id);
            let mut row = vec![0; vertices.len()];
            for (v, c) in [(tile.top(), 1), (tile.bottom(), 1), (tile.left(), -1), (tile.right(), -1)] {
                if let Some(&k) = col.get(&v) {
                    row[k] += c;
                }
            }
            row
        })
        .collect();
    (vertices, rows)
}

/// The dual Chamber Ansatz, tile coordinates to vertex coordinates.
pub fn chamber_ansatz_dual(tiling: &Tiling) -> Result<MonomialMap> {
    let (vertices, a) = chamber_ansatz_matrix(tiling);
    let d = linalg::det_int(&a);
    ensure!(d.abs().is_one(), "dual chamber ansatz of {} has determinant {d}", tiling.word());
    Ok(MonomialMap {
        source: tile_coords(tiling.word()),
        target: vertex_coords(&vertices),
        matrix: linalg::transpose(&a),
    })
}

/// The Neighbour Ansatz `x_T = c_l(T) / c_r(T)`, vertex coordinates to tile
/// coordinates, with left-boundary coordinates set to 1.
pub fn neighbour_ansatz(tiling: &Tiling) -> Result<MonomialMap> {
    let vertices = cluster_vertices(tiling);
    let col: BTreeMap<Subset, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let matrix: Vec<Vec<i64>> = tiling
        .order()
        .iter()
        .map(|&id| {
            let tile = tiling.tile(id);
            let mut row = vec![0; vertices.len()];
            if let Some(&k) = col.get(&tile.left()) {
                row[k] += 1;
            }
            if let Some(&k) = col.get(&tile.right()) {
                row[k] -= 1;
            }
            row
        })
        .collect();
    let d = linalg::det_int(&matrix);
    ensure!(d.abs().is_one(), "neighbour ansatz of {} has determinant {d}", tiling.word());
    Ok(MonomialMap { source: vertex_coords(&vertices), target: tile_coords(tiling.word()), matrix })
}

/// `W_a` on the X-cluster torus of the word: `r_a` with each exponent `y`
/// replaced by `A^{-1} y`.
pub fn ghkk_restriction(crystal: &CrossingCrystal, a: u8) -> Result<LaurentPolynomial> {
    let tiling = crystal.tiling();
    let n = tiling.n();
    let r = reineke_poly(crystal, a, true)?;
    let (vertices, matrix) = chamber_ansatz_matrix(tiling);
    let inverse = linalg::unimodular_inverse(&matrix)?;
    let mut w = LaurentPolynomial::new(vertex_coords(&vertices));
    for (y, &c) in &r.terms {
        w.add_term(linalg::mat_vec(&inverse, y), c);
    }
    ensure!(!w.has_constant_term(), "W_{a} has a constant term");
    ensure!(w.terms.values().all(|&c| c == 1), "W_{a} has a coefficient other than 1");
    ensure!(w.terms.keys().flatten().all(|&e| e == 0 || e == -1), "W_{a} has an exponent outside {{0,-1}}");
    if is_optimized(tiling, a) {
        let frozen = sets::suffix(n, n - a as usize);
        let k = vertices.iter().position(|&v| v == frozen).expect("frozen vertex present");
        let mut e = vec![0; vertices.len()];
        e[k] = -1;
        ensure!(w.terms.len() == 1 && w.terms.contains_key(&e), "W_{a} is not the frozen monomial on an optimized seed");
    }
    Ok(w)
}

/// `f_{chi,a}` restricted to the A-cluster torus: `r_a` pulled back along the
/// Neighbour Ansatz.
pub fn bk_restriction(crystal: &CrossingCrystal, a: u8) -> Result<LaurentPolynomial> {
    let iota = neighbour_ansatz(crystal.tiling())?;
    Ok(iota.pull_back(&reineke_poly(crystal, a, true)?))
}

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant of rows `1..#S` and columns `S` of `u`.
pub fn chamber_minor(u: &Matrix, set: Subset) -> Rational {
    let cols: Vec<usize> = sets::elements(set).into_iter().map(|s| s as usize - 1).collect();
    let sub: Matrix = (0..cols.len()).map(|r| cols.iter().map(|&c| u[r][c].clone()).collect()).collect();
    linalg::det(sub)
}

/// `f_{chi,a}(u) = Delta_{{a, a+2..n}} / Delta_{{a+1..n}}`.
pub fn bk_value(u: &Matrix, a: u8) -> Result<Rational> {
    let n = u.len();
    let top = sets::suffix(n, n - a as usize);
    let den = chamber_minor(u, top);
    if den.is_zero() {
        return Err(Error::Malformed(format!("minor {{{}}} vanishes", sets::format(top))));
    }
    Ok(chamber_minor(u, sets::suffix(n, n - a as usize - 1) | sets::bit(a)) / den)
}

pub fn random_unitriangular<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match r.cmp(&c) {
                    std::cmp::Ordering::Greater => Rational::zero(),
                    std::cmp::Ordering::Equal => Rational::one(),
                    std::cmp::Ordering::Less => rational(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
                })
                .collect()
        })
        .collect()
}

pub fn is_unitriangular(u: &Matrix) -> bool {
    let n = u.len();
    u.iter().all(|r| r.len() == n)
        && (0..n).all(|r| (0..=r).all(|c| u[r][c] == if r == c { Rational::one() } else { Rational::zero() }))
}

/// Chamber minors at the given vertices, `None` if one vanishes.
pub fn minor_point(u: &Matrix, vertices: &[Subset]) -> Option<Vec<Rational>> {
    let point: Vec<Rational> = vertices.iter().map(|&v| chamber_minor(u, v)).collect();
    point.iter().all(|x| !x.is_zero()).then_some(point)
}

/// `r_a(iota(Delta(u))) = f_{chi,a}(u)` and `W_a(CA(iota(Delta(u)))) =
/// f_{chi,a}(u)` for every `a`. Returns `false` when `u` leaves the open cell.
pub fn bk_identity_check(crystal: &CrossingCrystal, u: &Matrix, report: &mut Report) -> Result<bool> {
    let tiling = crystal.tiling();
    let n = tiling.n();
    if u.len() != n || !is_unitriangular(u) {
        return Err(Error::Malformed(format!("expected a unitriangular {n} x {n} matrix")));
    }
    let vertices = cluster_vertices(tiling);
    let needed: Vec<Subset> = (1..n).map(|a| sets::suffix(n, n - a)).collect();
    let (Some(t), Some(_)) = (minor_point(u, &vertices), minor_point(u, &needed)) else {
        return Ok(false);
    };
    let iota = neighbour_ansatz(tiling)?;
    let ca = chamber_ansatz_dual(tiling)?;
    let x = iota.apply(&t)?;
    let v = ca.apply(&x)?;
    for a in 1..n as u8 {
        let want = bk_value(u, a)?;
        let r = reineke_poly(crystal, a, true)?.evaluate(&x)?;
        report.expect(r == want, || {
            format!("{}: r_{a}(iota) = {} but f_chi = {}", crystal.word(), format_rational(&r), format_rational(&want))
        });
        let w = ghkk_restriction(crystal, a)?.evaluate(&v)?;
        report.expect(w == want, || {
            format!("{}: W_{a}(CA(iota)) = {} but f_chi = {}", crystal.word(), format_rational(&w), format_rational(&want))
        });
    }
    Ok(true)
}

/// Compares, on integer points of a box (or the sampled points given), the
/// GHKK cone with the image of the string cone under the tropical dual
/// Chamber Ansatz, and the string cone with the image of the BK cone under
/// the tropical Neighbour Ansatz.
pub fn cone_correspondence_check(crystal: &CrossingCrystal, points: &[Vec<i64>]) -> Result<Report> {
    let word = crystal.word();
    let tiling = crystal.tiling();
    let mut report = Report::new(format!("cone correspondence {word}"));
    let string_cone = strings::string_cone(crystal);
    let ca = chamber_ansatz_dual(tiling)?;
    let ca_inverse = linalg::unimodular_inverse(&ca.matrix)?;
    let iota = neighbour_ansatz(tiling)?;
    let mut ghkk = Vec::new();
    let mut bk = Vec::new();
    for a in 1..word.n() as u8 {
        ghkk.push(ghkk_restriction(crystal, a)?);
        bk.push(bk_restriction(crystal, a)?);
    }
    let in_cone = |polys: &[LaurentPolynomial], z: &[i64]| polys.iter().all(|p| p.tropicalize(z).unwrap_or(0) >= 0);
    for z in points {
        let s = linalg::mat_vec(&ca_inverse, z);
        report.expect(in_cone(&ghkk, z) == string_cone.contains(&s), || {
            format!("{word}: GHKK membership of {z:?} differs from string membership of {s:?}")
        });
        let image = ca.tropical(z);
        report.expect(string_cone.contains(z) == in_cone(&ghkk, &image), || {
            format!("{word}: string point {z:?} and its image {image:?} disagree")
        });
        let s = iota.tropical(z);
        report.expect(in_cone(&bk, z) == string_cone.contains(&s), || {
            format!("{word}: BK membership of {z:?} differs from string membership of {s:?}")
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MutationKind {
    A,
    X,
}

/// The flip performed by a braid move: the mutated vertex before and after.
fn flip_vertices(tiling: &Tiling, mv: WordMove) -> Result<(Subset, Subset)> {
    let order = words::convex_order(tiling.word());
    let p = mv.position - 1;
    let pairs = [order[p], order[p + 1], order[p + 2]];
    let hex = tiling.hexagon(&pairs)?;
    Ok((hex.inner_vertex(), hex.flipped_inner_vertex()))
}

fn mutate(kind: MutationKind, q: &ExchangeQuiver, k: Subset, k_new: Subset, point: &BTreeMap<Subset, Rational>) -> Result<BTreeMap<Subset, Rational>> {
    let mut out = point.clone();
    let xk = point[&k].clone();
    out.remove(&k);
    match kind {
        MutationKind::A => {
            let mut into = Rational::one();
            let mut from = Rational::one();
            for (&v, x) in point {
                let e = q.epsilon(v, k);
                if e > 0 {
                    into *= pow(x, e)?;
                } else if e < 0 {
                    from *= pow(x, -e)?;
                }
            }
            out.insert(k_new, (into + from) / xk);
        }
        MutationKind::X => {
            for (&v, x) in point {
                let e = q.epsilon(v, k);
                if v != k && e != 0 {
                    let factor = Rational::one() + pow(&xk, -e.signum())?;
                    out.insert(v, x * pow(&factor, -e)?);
                }
            }
            out.insert(k_new, xk.recip());
        }
    }
    Ok(out)
}

/// Cluster mutation from the seed of `i` to the seed of `j`, mutating at the
/// interior vertex of every flipped hexagon along the move path.
pub fn eval_cluster_mutation(kind: MutationKind, i: &ReducedWord, j: &ReducedWord, point: &[Rational]) -> Result<Vec<Rational>> {
    let tiling = Tiling::new(i);
    let vertices = cluster_vertices(&tiling);
    if point.len() != vertices.len() {
        return Err(Error::Malformed(format!("point needs {} coordinates", vertices.len())));
    }
    let mut values: BTreeMap<Subset, Rational> = vertices.into_iter().zip(point.iter().cloned()).collect();
    let mut current = i.clone();
    for mv in words::move_path(i, j)? {
        if mv.kind == MoveKind::Braid {
            let tiling = Tiling::new(&current);
            let (k, k_new) = flip_vertices(&tiling, mv)?;
            values = mutate(kind, &quiver(&tiling), k, k_new, &values)?;
        }
        current = words::apply_move(&current, mv)?;
    }
    let target = cluster_vertices(&Tiling::new(j));
    ensure!(values.keys().copied().eq(target.iter().copied()), "mutation did not land on the vertices of {j}");
    Ok(values.into_values().collect())
}

/// For one pair of words: A-mutation of chamber minors gives the chamber
/// minors of the new seed and `iota_j o mu = trs o iota_i`; X-mutation
/// satisfies `CA_j o trs = mu o CA_i`.
pub fn mutation_check(
    i: &ReducedWord,
    j: &ReducedWord,
    u: &Matrix,
    x: &[Rational],
    report: &mut Report,
) -> Result<bool> {
    let (ti, tj) = (Tiling::new(i), Tiling::new(j));
    let (vi, vj) = (cluster_vertices(&ti), cluster_vertices(&tj));
    let (Some(t), Some(t_j)) = (minor_point(u, &vi), minor_point(u, &vj)) else {
        return Ok(false);
    };
    let mutated = eval_cluster_mutation(MutationKind::A, i, j, &t)?;
    report.expect(mutated == t_j, || format!("A-mutation {i} -> {j} does not give the chamber minors"));
    let left = neighbour_ansatz(&tj)?.apply(&mutated)?;
    let iota_i = neighbour_ansatz(&ti)?.apply(&t)?;
    if iota_i.iter().all(|v| v.is_positive()) {
        let right = eval_trs(i, j, &iota_i)?;
        report.expect(left == right, || format!("iota o A-mutation != trs o iota for {i} -> {j}"));
    }
    let left = chamber_ansatz_dual(&tj)?.apply(&eval_trs(i, j, x)?)?;
    let right = eval_cluster_mutation(MutationKind::X, i, j, &chamber_ansatz_dual(&ti)?.apply(x)?)?;
    report.expect(left == right, || format!("CA o trs != X-mutation o CA for {i} -> {j} at {}", show(x)));
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> ReducedWord {
        text.parse().unwrap()
    }

    fn q(p: i64, d: i64) -> Rational {
        rational(p, d)
    }

    fn example_u() -> Matrix {
        [[1, 1, 1], [0, 1, 2], [0, 0, 1]].iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect()
    }

    #[test]
    fn reineke_polynomials() {
        let c = CrossingCrystal::new(&w("212")).unwrap();
        assert_eq!(reineke_poly(&c, 1, true).unwrap().to_string(), "x[1,2]");
        assert_eq!(reineke_poly(&c, 2, true).unwrap().to_string(), "x[1,3] x[1,2]^-1 + x[2,3]");
        let c = CrossingCrystal::new(&w("121")).unwrap();
        assert_eq!(reineke_poly(&c, 2, false).unwrap().to_string(), "x[1,3]");
    }

    #[test]
    fn example_minors() {
        let u = example_u();
        let m = |e: &[u8]| chamber_minor(&u, sets::from_elements(e));
        assert_eq!((m(&[2]), m(&[3]), m(&[1, 3]), m(&[2, 3])), (q(1, 1), q(1, 1), q(2, 1), q(1, 1)));
        assert_eq!(bk_value(&u, 1).unwrap(), q(2, 1));
        assert_eq!(bk_value(&u, 2).unwrap(), q(1, 1));
    }

    #[test]
    fn example_neighbour_ansatz() {
        let u = example_u();
        for (word, want) in [("121", [q(1, 1), q(1, 1), q(1, 1)]), ("212", [q(1, 2), q(1, 1), q(2, 1)])] {
            let tiling = Tiling::new(&w(word));
            let t = minor_point(&u, &cluster_vertices(&tiling)).unwrap();
            assert_eq!(neighbour_ansatz(&tiling).unwrap().apply(&t).unwrap(), want.to_vec());
        }
        let tiling = Tiling::new(&w("121"));
        let iota = neighbour_ansatz(&tiling).unwrap();
        let col = iota.source.iter().position(|s| s == "2").unwrap();
        assert_eq!(iota.matrix[0][col], -1);
    }

    #[test]
    fn example_quiver() {
        let q = quiver(&Tiling::new(&w("121")));
        assert_eq!(vertex_coords(&q.vertices), vec!["2", "3", "2,3"]);
        let arrows: Vec<(String, String, i64)> = q.to_json().arrows;
        assert_eq!(arrows, vec![("2".into(), "3".into(), 1), ("2,3".into(), "2".into(), 1)]);
        assert!(is_optimized(&Tiling::new(&w("121")), 2));
        assert!(is_optimized(&Tiling::new(&w("212")), 1));
        assert!(!is_optimized(&Tiling::new(&w("121")), 1));
    }

    #[test]
    fn ghkk_examples() {
        let c = CrossingCrystal::new(&w("212")).unwrap();
        assert_eq!(ghkk_restriction(&c, 1).unwrap().to_string(), "x[2,3]^-1");
        let c = CrossingCrystal::new(&w("121")).unwrap();
        assert_eq!(ghkk_restriction(&c, 2).unwrap().to_string(), "x[3]^-1");
    }

    #[test]
    fn trs_example() {
        let x = vec![q(1, 1), q(1, 1), q(1, 1)];
        let y = eval_trs(&w("121"), &w("212"), &x).unwrap();
        assert_eq!(y, vec![q(1, 2), q(1, 1), q(2, 1)]);
        assert_eq!(eval_trs(&w("212"), &w("121"), &y).unwrap(), x);
        let c = CrossingCrystal::new(&w("212")).unwrap();
        assert_eq!(reineke_poly(&c, 1, true).unwrap().evaluate(&y).unwrap(), q(2, 1));
    }

    #[test]
    fn tropical_shadow() {
        let c = CrossingCrystal::new(&w("212")).unwrap();
        let p = reineke_poly(&c, 2, true).unwrap();
        // coordinates ([2,3],[1,3],[1,2])
        assert_eq!(p.tropicalize(&[3, 1, 2]), Some(-1));
        assert_eq!(p.tropicalize(&[0, 4, 1]), Some(0));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
    }
}
