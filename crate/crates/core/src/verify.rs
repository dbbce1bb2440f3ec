//! Verification suites: exhaustive checks at small rank and seeded samples
//! at `n = 5`, each producing a [`Report`].

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bz;
use crate::crossings::{weyl_dimension, CrossingCrystal};
use crate::lusztig::{CrystalOp, LusztigDatum, Oracle};
use crate::potentials::{self, Matrix};
use crate::report::Report;
use crate::sets::{self, Subset};
use crate::strings::{self, box_points};
use crate::tiling::Tiling;
use crate::words::{self, ReducedWord};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Crossing,
    Duality,
    Am,
    Rtrans,
    Ghkk,
    Bk,
    Lattice,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Crossing, Suite::Duality, Suite::Am, Suite::Rtrans, Suite::Ghkk, Suite::Bk, Suite::Lattice];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "crossing" => Suite::Crossing,
            "duality" => Suite::Duality,
            "am" => Suite::Am,
            "rtrans" => Suite::Rtrans,
            "ghkk" => Suite::Ghkk,
            "bk" => Suite::Bk,
            "lattice" => Suite::Lattice,
            other => return Err(Error::Malformed(format!("unknown suite {other:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        f.write_str(s.as_str().expect("string"))
    }
}

/// Sizes used when a suite samples instead of enumerating.
#[derive(Clone, Debug)]
pub struct Options {
    /// Ranks to run; `None` uses the suite's default range.
    pub n: Option<usize>,
    pub seed: u64,
    /// Words drawn at `n >= 5`.
    pub sample_words: usize,
    /// Random data per sampled word.
    pub sample_points: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { n: None, seed: 0, sample_words: 50, sample_points: 1000 }
    }
}

impl Options {
    fn ranks(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => default.collect(),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

fn check_rank(n: usize) -> Result<()> {
    if !(2..=words::ENUMERATION_LIMIT).contains(&n) {
        return Err(Error::TooLarge { n, limit: words::ENUMERATION_LIMIT });
    }
    Ok(())
}

/// All words for `n <= 4`, a seeded sample of `count` words above.
pub fn words_for(n: usize, count: usize, rng: &mut impl Rng) -> Result<Vec<ReducedWord>> {
    check_rank(n)?;
    let mut all = words::enumerate_reduced_words(n)?;
    if n >= 5 && all.len() > count {
        all.shuffle(rng);
        all.truncate(count);
        all.sort_by(|a, b| a.letters().cmp(b.letters()));
    }
    Ok(all)
}

pub fn run(suite: Suite, opts: &Options) -> Result<Vec<Report>> {
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run(s, opts)?);
            }
            Ok(out)
        }
        Suite::Crossing => opts.ranks(3..=5).into_iter().map(|n| crossing_suite(n, opts)).collect(),
        Suite::Duality => opts.ranks(3..=4).into_iter().map(|n| duality_suite(n, opts)).collect(),
        Suite::Am => opts.ranks(3..=4).into_iter().map(|n| am_suite(n, opts)).collect(),
        Suite::Rtrans => opts.ranks(3..=4).into_iter().map(|n| rtrans_suite(n, opts)).collect(),
        Suite::Ghkk => opts.ranks(3..=5).into_iter().map(|n| ghkk_suite(n, opts)).collect(),
        Suite::Bk => opts.ranks(3..=5).into_iter().map(|n| bk_suite(n, opts)).collect(),
        Suite::Lattice => {
            let mut out = Vec::new();
            for n in opts.ranks(3..=5) {
                out.push(lattice_suite(n)?);
                out.push(reselection_suite(n)?);
                if n <= 4 {
                    out.push(weyl_suite(n, 2)?);
                }
            }
            Ok(out)
        }
    }
}

/// Crossing formulas against transport for every operator: all of
/// `{0..3}^N` for `n <= 4`, random points otherwise.
pub fn crossing_suite(n: usize, opts: &Options) -> Result<Report> {
    let mut rng = opts.rng(1);
    let mut report = Report::new(format!("crossing n={n}"));
    let oracle = Oracle::new();
    for word in words_for(n, opts.sample_words, &mut rng)? {
        let crystal = CrossingCrystal::new(&word)?;
        let points = if n <= 4 {
            box_points(word.len(), 0, 3)
        } else {
            (0..opts.sample_points).map(|_| (0..word.len()).map(|_| rng.gen_range(0..=3)).collect()).collect()
        };
        for p in points {
            let x = LusztigDatum::from_word_coords(&word, &p)?;
            for a in 1..n as u8 {
                for op in CrystalOp::ALL {
                    let want = oracle.apply(op, a, &x)?;
                    match crystal.apply(op, a, &x) {
                        Ok(got) => report.expect(got == want, || format!("{word} {x} {op}_{a}: {got:?} != {want:?}")),
                        Err(e) => report.fail(format!("{word} {x} {op}_{a}: {e}")),
                    }
                }
            }
        }
    }
    Ok(report)
}

/// String cone points against `f*`-generated string data.
pub fn duality_suite(n: usize, opts: &Options) -> Result<Report> {
    let mut rng = opts.rng(2);
    let mut report = Report::new(format!("duality n={n}"));
    let (edge, depth) = if n <= 3 { (4, 8) } else { (3, 5) };
    for word in words_for(n, opts.sample_words, &mut rng)? {
        let crystal = CrossingCrystal::new(&word)?;
        report.absorb(strings::polar_duality_check(&crystal, edge, depth)?);
    }
    Ok(report)
}

/// BZ commuting square with `f_a` on `{0..2}^N`.
pub fn am_suite(n: usize, opts: &Options) -> Result<Report> {
    let mut rng = opts.rng(3);
    let mut report = Report::new(format!("am n={n}"));
    for word in words_for(n, opts.sample_words, &mut rng)? {
        let crystal = CrossingCrystal::new(&word)?;
        let points = if n <= 4 {
            box_points(word.len(), 0, 2)
        } else {
            (0..opts.sample_points / 10).map(|_| (0..word.len()).map(|_| rng.gen_range(0..=2)).collect()).collect()
        };
        for p in points {
            let x = LusztigDatum::from_word_coords(&word, &p)?;
            for a in 1..n as u8 {
                bz::am_check(&crystal, a, &x, &mut report)?;
            }
        }
    }
    Ok(report)
}

/// Words reachable from `word` by at most `depth` moves, `word` included.
pub fn words_within(word: &ReducedWord, depth: usize) -> Result<Vec<ReducedWord>> {
    let mut seen = vec![word.clone()];
    let mut layer = vec![word.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for mv in words::available_moves(w) {
                let v = words::apply_move(w, mv)?;
                if !seen.contains(&v) {
                    seen.push(v.clone());
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    Ok(seen)
}

/// `r_{a,i} = r_{a,j} o trs` and its word-coordinate analogue for words at
/// most three moves apart, 100 points per pair.
pub fn rtrans_suite(n: usize, opts: &Options) -> Result<Report> {
    let mut rng = opts.rng(4);
    let mut report = Report::new(format!("rtrans n={n}"));
    let words = words_for(n, opts.sample_words.min(10), &mut rng)?;
    let points_per_pair = if n <= 4 { 100 } else { 10 };
    for i in &words {
        let ci = CrossingCrystal::new(i)?;
        for j in words_within(i, 3)? {
            let cj = CrossingCrystal::new(&j)?;
            let points: Vec<_> =
                (0..points_per_pair).map(|_| potentials::random_positive_point(&mut rng, i.len())).collect();
            potentials::transform_check_rtrans(&ci, &cj, &points, &mut report)?;
        }
    }
    Ok(report)
}

/// GHKK restrictions, unimodularity and the cone correspondence.
pub fn ghkk_suite(n: usize, opts: &Options) -> Result<Report> {
    let mut rng = opts.rng(5);
    let mut report = Report::new(format!("ghkk n={n}"));
    for word in words_for(n, opts.sample_words, &mut rng)? {
        let crystal = CrossingCrystal::new(&word)?;
        for a in 1..n as u8 {
            match potentials::ghkk_restriction(&crystal, a) {
                Ok(_) => report.pass(),
                Err(e) => report.fail(format!("{word} a={a}: {e}")),
            }
        }
        for check in [potentials::chamber_ansatz_dual(crystal.tiling()).err(), potentials::neighbour_ansatz(crystal.tiling()).err()] {
            match check {
                None => report.pass(),
                Some(e) => report.fail(format!("{word}: {e}")),
            }
        }
        let points = if n <= 4 {
            box_points(word.len(), -2, 2)
        } else {
            (0..opts.sample_points).map(|_| (0..word.len()).map(|_| rng.gen_range(-2..=2)).collect()).collect()
        };
        report.absorb(potentials::cone_correspondence_check(&crystal, &points)?);
    }
    Ok(report)
}

/// Chamber minors of `u` at every nonempty subset, indexed by bitmask.
fn all_minors(u: &Matrix) -> Vec<potentials::Rational> {
    let n = u.len();
    sets::all(n).map(|s| if s == 0 { num_traits::One::one() } else { potentials::chamber_minor(u, s) }).collect()
}

/// BK identity and the relation of the two potentials at random
/// unitriangular matrices; A- and X-mutation squares along single flips.
pub fn bk_suite(n: usize, opts: &Options) -> Result<Report> {
    use num_traits::Zero;
    let mut rng = opts.rng(6);
    let mut report = Report::new(format!("bk n={n}"));
    let words = if n <= 5 { words::enumerate_reduced_words(n)? } else { words_for(n, opts.sample_words, &mut rng)? };
    struct Prepared {
        crystal: CrossingCrystal,
        vertices: Vec<Subset>,
        iota: potentials::MonomialMap,
        ca: potentials::MonomialMap,
        r: Vec<potentials::LaurentPolynomial>,
        w: Vec<potentials::LaurentPolynomial>,
    }
    let mut prepared = Vec::new();
    for word in &words {
        let crystal = CrossingCrystal::new(word)?;
        let tiling = crystal.tiling();
        let mut r = Vec::new();
        let mut w = Vec::new();
        for a in 1..n as u8 {
            r.push(potentials::reineke_poly(&crystal, a, true)?);
            w.push(potentials::ghkk_restriction(&crystal, a)?);
        }
        prepared.push(Prepared {
            vertices: potentials::cluster_vertices(tiling),
            iota: potentials::neighbour_ansatz(tiling)?,
            ca: potentials::chamber_ansatz_dual(tiling)?,
            r,
            w,
            crystal,
        });
    }
    let mut used = vec![0usize; prepared.len()];
    let mut attempts = 0;
    while used.iter().any(|&k| k < 100) {
        attempts += 1;
        if attempts > 100_000 {
            report.fail("too many singular random matrices".to_string());
            break;
        }
        let u = potentials::random_unitriangular(&mut rng, n);
        let minors = all_minors(&u);
        let bk: Vec<Option<potentials::Rational>> = (1..n as u8).map(|a| potentials::bk_value(&u, a).ok()).collect();
        if bk.iter().any(Option::is_none) {
            continue;
        }
        for (k, p) in prepared.iter().enumerate() {
            if used[k] >= 100 {
                continue;
            }
            let t: Vec<_> = p.vertices.iter().map(|&v| minors[v as usize].clone()).collect();
            if t.iter().any(|x| x.is_zero()) {
                continue;
            }
            used[k] += 1;
            let x = p.iota.apply(&t)?;
            let v = p.ca.apply(&x)?;
            for a in 0..n - 1 {
                let want = bk[a].as_ref().expect("checked");
                let r = p.r[a].evaluate(&x)?;
                report.expect(&r == want, || format!("{}: r_{}(iota) != f_chi at {u:?}", p.crystal.word(), a + 1));
                let w = p.w[a].evaluate(&v)?;
                report.expect(&w == want, || format!("{}: W_{}(CA(iota)) != f_chi at {u:?}", p.crystal.word(), a + 1));
            }
        }
    }
    if n <= 4 {
        for i in &words {
            for j in words_within(i, 1)? {
                let mut done = 0;
                while done < 5 {
                    let u = potentials::random_unitriangular(&mut rng, n);
                    let x = potentials::random_positive_point(&mut rng, i.len());
                    if potentials::mutation_check(i, &j, &u, &x, &mut report)? {
                        done += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Lattice property of crossings and the Reineke sublattice, primal and dual.
pub fn lattice_suite(n: usize) -> Result<Report> {
    let mut report = Report::new(format!("lattice n={n}"));
    for word in words::enumerate_reduced_words(n)? {
        let crystal = CrossingCrystal::new(&word)?;
        for a in 1..n as u8 {
            for dual in [false, true] {
                match crystal.poset(a, dual).check_lattice() {
                    Ok(()) => report.pass(),
                    Err(e) => report.fail(format!("{word} a={a} dual={dual}: {e}")),
                }
            }
        }
    }
    Ok(report)
}

/// `f_a [r]^- = [r]^- + r` for every Reineke vector `r`, primal and dual.
pub fn reselection_suite(n: usize) -> Result<Report> {
    let mut report = Report::new(format!("reselection n={n}"));
    for word in words::enumerate_reduced_words(n)? {
        let crystal = CrossingCrystal::new(&word)?;
        for a in 1..n as u8 {
            for dual in [false, true] {
                for r in crystal.poset(a, dual).reineke_vectors() {
                    let minus: Vec<i64> = r.iter().map(|&v| (-v).max(0)).collect();
                    let x = LusztigDatum::new(word.clone(), minus.clone())?;
                    let fx = if dual { crystal.f_star(a, &x)? } else { crystal.f(a, &x)? };
                    let want: Vec<i64> = minus.iter().zip(&r).map(|(m, v)| m + v).collect();
                    report.expect(fx.values() == want.as_slice(), || {
                        format!("{word} a={a} dual={dual}: f at [r]^- misses r = {r:?}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `#B(lambda)` against the Weyl dimension formula for all `lambda` with
/// entries up to `max`, on the lexicographically minimal word.
pub fn weyl_suite(n: usize, max: i64) -> Result<Report> {
    let mut report = Report::new(format!("weyl n={n}"));
    let crystal = CrossingCrystal::new(&ReducedWord::lex_min(n))?;
    for lambda in box_points(n - 1, 0, max) {
        let size = crystal.highest_weight_crystal(&lambda)?.len() as u128;
        let want = weyl_dimension(&lambda);
        report.expect(size == want, || format!("lambda = {lambda:?}: {size} elements, dimension {want}"));
    }
    Ok(report)
}

/// The kappa levels of a tiling as lists of pairs.
pub fn kappa_pairs(tiling: &Tiling, s: usize) -> Result<Vec<Vec<(u8, u8)>>> {
    let kappa = tiling.kappa(s)?;
    Ok(kappa.levels.iter().map(|level| level.iter().map(|&id| tiling.tile(id).pair()).collect()).collect())
}
