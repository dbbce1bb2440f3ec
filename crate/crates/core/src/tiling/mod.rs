//! Rhombic tilings of the regular `2n`-gon attached to reduced words of `w0`.
//!
//! A tile `[s,t;S]` is the rhombus with vertices `S, S+s, S+t, S+s+t`. Tiles
//! are addressed by the dense root index of their pair `(s, t)`; within one
//! tiling the pair determines the tile.

mod svg;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use svg::{render_svg, Decorations};

use crate::error::ensure;
use crate::sets::{self, Subset};
use crate::words::{self, MoveKind, Pair, ReducedWord, WordMove};
use crate::{Error, Result};

pub type TileId = usize;

/// The edge between `low` and `low + label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub low: Subset,
    pub label: u8,
}

impl Edge {
    pub fn new(low: Subset, label: u8) -> Self {
        debug_assert!(!sets::contains(low, label));
        Edge { low, label }
    }

    pub fn high(&self) -> Subset {
        self.low | sets::bit(self.label)
    }

    pub fn between(a: Subset, b: Subset) -> Option<Edge> {
        let (low, high) = if a < b { (a, b) } else { (b, a) };
        let diff = low ^ high;
        (diff.count_ones() == 1 && low & diff == 0)
            .then(|| Edge::new(low, diff.trailing_zeros() as u8 + 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub s: u8,
    pub t: u8,
    pub base: Subset,
}

impl Tile {
    pub fn pair(&self) -> Pair {
        (self.s, self.t)
    }

    pub fn bottom(&self) -> Subset {
        self.base
    }

    pub fn top(&self) -> Subset {
        self.base | sets::bit(self.s) | sets::bit(self.t)
    }

    /// `S + min`
    pub fn left(&self) -> Subset {
        self.base | sets::bit(self.s)
    }

    /// `S + max`
    pub fn right(&self) -> Subset {
        self.base | sets::bit(self.t)
    }

    pub fn vertices(&self) -> [Subset; 4] {
        [self.bottom(), self.right(), self.top(), self.left()]
    }

    /// Edges in counterclockwise order starting at the bottom vertex.
    pub fn edges(&self) -> [Edge; 4] {
        let (s, t, b) = (self.s, self.t, self.base);
        [
            Edge::new(b, t),
            Edge::new(b | sets::bit(t), s),
            Edge::new(b | sets::bit(s), t),
            Edge::new(b, s),
        ]
    }

    pub fn has_label(&self, label: u8) -> bool {
        self.s == label || self.t == label
    }

    pub fn other_label(&self, label: u8) -> u8 {
        if self.s == label {
            self.t
        } else {
            self.s
        }
    }
}

/// Levels of a κ-partition, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa {
    pub levels: Vec<Vec<TileId>>,
    pub level: Vec<usize>,
}

/// Which of the two tilings of a hexagon with pairs `s < t < u` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HexagonForm {
    /// `[s,t;S], [s,u;S+t], [t,u;S]`, interior vertex `S+t`; produced by a
    /// word segment `(a, a+1, a)`.
    Lower,
    /// `[t,u;S+s], [s,u;S], [s,t;S+u]`, interior vertex `S+s+u`; produced by
    /// `(a+1, a, a+1)`.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hexagon {
    pub s: u8,
    pub t: u8,
    pub u: u8,
    /// The bottom vertex of the hexagon.
    pub base: Subset,
    pub form: HexagonForm,
}

impl Hexagon {
    pub fn pairs(&self) -> [Pair; 3] {
        [(self.s, self.t), (self.s, self.u), (self.t, self.u)]
    }

    pub fn inner_vertex(&self) -> Subset {
        match self.form {
            HexagonForm::Lower => self.base | sets::bit(self.t),
            HexagonForm::Upper => self.base | sets::bit(self.s) | sets::bit(self.u),
        }
    }

    /// The vertex that replaces the interior vertex after flipping.
    pub fn flipped_inner_vertex(&self) -> Subset {
        match self.form {
            HexagonForm::Lower => self.base | sets::bit(self.s) | sets::bit(self.u),
            HexagonForm::Upper => self.base | sets::bit(self.t),
        }
    }

    fn tiles(&self) -> [Tile; 3] {
        let (s, t, u, b) = (self.s, self.t, self.u, self.base);
        match self.form {
            HexagonForm::Lower => [
                Tile { s, t, base: b },
                Tile { s, t: u, base: b | sets::bit(t) },
                Tile { s: t, t: u, base: b },
            ],
            HexagonForm::Upper => [
                Tile { s, t, base: b | sets::bit(u) },
                Tile { s, t: u, base: b },
                Tile { s: t, t: u, base: b | sets::bit(s) },
            ],
        }
    }

    pub fn flipped(&self) -> Hexagon {
        let form = match self.form {
            HexagonForm::Lower => HexagonForm::Upper,
            HexagonForm::Upper => HexagonForm::Lower,
        };
        Hexagon { form, ..*self }
    }
}

/// Position of a tile relative to an oriented tile path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    On,
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct Flip {
    pub tiling: Tiling,
    /// A word of the original tiling in which the hexagon tiles are adjacent.
    pub word: ReducedWord,
    pub braid: WordMove,
}

#[derive(Clone, Debug)]
pub struct Tiling {
    n: usize,
    word: ReducedWord,
    tiles: Vec<Tile>,
    order: Vec<TileId>,
    position: Vec<usize>,
    edge_tiles: BTreeMap<Edge, Vec<TileId>>,
}

impl PartialEq for Tiling {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.tiles == other.tiles
    }
}

impl Eq for Tiling {}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TileJson {
    pub pair: [u8; 2],
    pub base: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TilingJson {
    pub n: usize,
    /// Tiles in the order of the generating word.
    pub tiles: Vec<TileJson>,
    /// The generating word.
    pub order: Vec<u8>,
}

pub fn build_tiling(word: &ReducedWord) -> Tiling {
    Tiling::new(word)
}

impl Tiling {
    pub fn new(word: &ReducedWord) -> Self {
        let n = word.n();
        let big_n = words::num_roots(n);
        let mut tiles = vec![Tile { s: 0, t: 0, base: 0 }; big_n];
        let mut order = Vec::with_capacity(big_n);
        let mut position = vec![0; big_n];
        let mut w = words::Permutation::identity(n);
        for (k, &l) in word.letters().iter().enumerate() {
            let (s, t) = (w.apply(l), w.apply(l + 1));
            let base = w.apply_set(sets::prefix(l as usize - 1));
            let id = words::root_index(n, s, t);
            tiles[id] = Tile { s, t, base };
            order.push(id);
            position[id] = k;
            w.times_simple(l);
        }
        let mut edge_tiles: BTreeMap<Edge, Vec<TileId>> = BTreeMap::new();
        for (id, tile) in tiles.iter().enumerate() {
            for e in tile.edges() {
                edge_tiles.entry(e).or_default().push(id);
            }
        }
        Tiling { n, word: word.clone(), tiles, order, position, edge_tiles }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn num_tiles(&self) -> usize {
        self.tiles.len()
    }

    pub fn tile(&self, id: TileId) -> &Tile {
        &self.tiles[id]
    }

    pub fn id(&self, pair: Pair) -> TileId {
        words::root_index(self.n, pair.0, pair.1)
    }

    pub fn checked_id(&self, pair: Pair) -> Result<TileId> {
        let (s, t) = (pair.0.min(pair.1), pair.0.max(pair.1));
        if s == 0 || s == t || t as usize > self.n {
            return Err(Error::UnknownReference(format!("tile [{},{}]", pair.0, pair.1)));
        }
        Ok(self.id((s, t)))
    }

    pub fn tile_of(&self, pair: Pair) -> &Tile {
        &self.tiles[self.id(pair)]
    }

    /// Tile ids in the order of the generating word.
    pub fn order(&self) -> &[TileId] {
        &self.order
    }

    /// Index of a tile in the generating word.
    pub fn position(&self, id: TileId) -> usize {
        self.position[id]
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn vertices(&self) -> BTreeSet<Subset> {
        self.tiles.iter().flat_map(|t| t.vertices()).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_tiles.keys().copied().collect()
    }

    pub fn tiles_at(&self, e: Edge) -> &[TileId] {
        self.edge_tiles.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The tile across edge `e` from `id`, if `e` is interior.
    pub fn across(&self, id: TileId, e: Edge) -> Option<TileId> {
        self.tiles_at(e).iter().copied().find(|&o| o != id)
    }

    /// Adjacent tiles with the shared edge, ordered by tile id.
    pub fn neighbours(&self, id: TileId) -> Vec<(TileId, Edge)> {
        let mut out: Vec<(TileId, Edge)> = self.tiles[id]
            .edges()
            .into_iter()
            .filter_map(|e| self.across(id, e).map(|o| (o, e)))
            .collect();
        out.sort();
        out
    }

    pub fn shared_edge(&self, a: TileId, b: TileId) -> Option<Edge> {
        let eb = self.tiles[b].edges();
        self.tiles[a].edges().into_iter().find(|e| eb.contains(e))
    }

    /// Boundary vertex `P_k`, `k` taken mod `2n`: `P_k = [k]` for `k <= n`
    /// and `P_{n+j} = {j+1, ..., n}`.
    pub fn boundary_vertex(&self, k: usize) -> Subset {
        let n = self.n;
        let k = k % (2 * n);
        if k <= n {
            sets::prefix(k)
        } else {
            sets::suffix(n, 2 * n - k)
        }
    }

    /// Boundary edge `b_k = P_{k-1} P_k` (index mod `2n`); `b_1 .. b_n` run up
    /// the left side with labels `1..n`, `b_{n+k}` is parallel to `b_k`.
    pub fn boundary_edge(&self, k: usize) -> Edge {
        let k = (k - 1) % (2 * self.n) + 1;
        Edge::between(self.boundary_vertex(k - 1), self.boundary_vertex(k))
            .expect("consecutive boundary vertices differ by one element")
    }

    pub fn is_boundary_edge(&self, e: Edge) -> bool {
        self.tiles_at(e).len() == 1
    }

    pub fn on_left_boundary(&self, v: Subset) -> bool {
        sets::is_prefix(v)
    }

    pub fn on_right_boundary(&self, v: Subset) -> bool {
        sets::is_suffix(self.n, v)
    }

    /// Planar position `v_S = sum of u_s`, `u_s` at angle
    /// `pi/2 + (n+1-2s) pi / (2n)`.
    pub fn point(&self, v: Subset) -> (f64, f64) {
        let n = self.n as f64;
        sets::elements(v).into_iter().fold((0.0, 0.0), |(x, y), s| {
            let angle = std::f64::consts::FRAC_PI_2
                + (n + 1.0 - 2.0 * s as f64) * std::f64::consts::PI / (2.0 * n);
            (x + angle.cos(), y + angle.sin())
        })
    }

    /// Tiles with label `s`, starting at the left boundary edge `b_s`.
    pub fn strip(&self, s: u8) -> Vec<TileId> {
        let mut out = Vec::with_capacity(self.n - 1);
        let mut edge = self.boundary_edge(s as usize);
        let mut current = self.tiles_at(edge)[0];
        loop {
            out.push(current);
            let tile = self.tiles[current];
            let other = tile
                .edges()
                .into_iter()
                .find(|e| e.label == s && *e != edge)
                .expect("a tile has two edges per label");
            match self.across(current, other) {
                Some(next) => {
                    edge = other;
                    current = next;
                }
                None => break,
            }
        }
        out
    }

    /// The κ-partition for `s` in `1..=2n`, swept from the border
    /// `b_{n+s+1}, ..., b_{2n+s}`.
    pub fn kappa(&self, s: usize) -> Result<Kappa> {
        let n = self.n;
        if s == 0 || s > 2 * n {
            return Err(Error::Malformed(format!("kappa index {s} outside [1,{}]", 2 * n)));
        }
        let mut border: Vec<Subset> = (n + s..=2 * n + s).map(|k| self.boundary_vertex(k)).collect();
        let mut level = vec![0usize; self.tiles.len()];
        let mut levels = Vec::new();
        let mut assigned = 0;
        while assigned < self.tiles.len() {
            let mut found = Vec::new();
            for k in 1..border.len() - 1 {
                let (a, b, c) = (border[k - 1], border[k], border[k + 1]);
                let (l1, l2) = ((a ^ b).trailing_zeros() as u8 + 1, (b ^ c).trailing_zeros() as u8 + 1);
                if l1 == l2 {
                    continue;
                }
                let id = self.id((l1.min(l2), l1.max(l2)));
                let vs = self.tiles[id].vertices();
                if level[id] == 0 && vs.contains(&a) && vs.contains(&b) && vs.contains(&c) {
                    found.push((k, id));
                }
            }
            ensure!(!found.is_empty(), "kappa sweep stalled for s = {s}");
            let lvl = levels.len() + 1;
            let mut ids = Vec::new();
            let snapshot = border.clone();
            for (k, id) in found {
                border[k] = snapshot[k - 1] ^ snapshot[k] ^ snapshot[k + 1];
                level[id] = lvl;
                ids.push(id);
            }
            assigned += ids.len();
            ids.sort();
            levels.push(ids);
        }
        let expected: Vec<Subset> = (s..=n + s).rev().map(|k| self.boundary_vertex(k)).collect();
        ensure!(border == expected, "kappa sweep for s = {s} ended off the boundary");
        Ok(Kappa { levels, level })
    }

    /// `T1 <=_s T2`: an `s`-ascending neighbour sequence runs from `T1` to `T2`.
    pub fn s_leq(&self, s: usize, t1: TileId, t2: TileId) -> Result<bool> {
        if t1 == t2 {
            return Ok(true);
        }
        let kappa = self.kappa(s)?;
        let mut stack = vec![t1];
        let mut seen = HashSet::new();
        while let Some(cur) = stack.pop() {
            for (next, _) in self.neighbours(cur) {
                if kappa.level[next] > kappa.level[cur] && kappa.level[next] <= kappa.level[t2] {
                    if next == t2 {
                        return Ok(true);
                    }
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Sides of all tiles with respect to a simple tile path entering its
    /// first tile through `entry` and leaving its last through `exit`.
    pub fn sides(&self, path: &[TileId], entry: Edge, exit: Edge) -> Result<Vec<Side>> {
        let mut side: Vec<Option<Side>> = vec![None; self.tiles.len()];
        for &p in path {
            ensure!(side[p].is_none(), "tile path visits tile {p} twice");
            side[p] = Some(Side::On);
        }
        let mut queue = Vec::new();
        for (j, &p) in path.iter().enumerate() {
            let e_in = if j == 0 { Some(entry) } else { self.shared_edge(path[j - 1], p) };
            let e_out = if j + 1 == path.len() { Some(exit) } else { self.shared_edge(p, path[j + 1]) };
            let (Some(e_in), Some(e_out)) = (e_in, e_out) else {
                return Err(Error::Invariant("tile path is not a neighbour sequence".into()));
            };
            let edges = self.tiles[p].edges();
            let i_in = edges.iter().position(|&e| e == e_in);
            let i_out = edges.iter().position(|&e| e == e_out);
            let (Some(i_in), Some(i_out)) = (i_in, i_out) else {
                return Err(Error::Invariant("path edge not on its tile".into()));
            };
            ensure!(i_in != i_out, "tile path turns back through one edge");
            for step in 1..4 {
                let k = (i_in + step) % 4;
                if k == i_out {
                    continue;
                }
                let here = if (k + 4 - i_in) % 4 < (i_out + 4 - i_in) % 4 { Side::Right } else { Side::Left };
                if let Some(o) = self.across(p, edges[k]) {
                    match side[o] {
                        None => {
                            side[o] = Some(here);
                            queue.push(o);
                        }
                        Some(Side::On) => {}
                        Some(prev) => ensure!(prev == here, "inconsistent sides at tile {o}"),
                    }
                }
            }
        }
        while let Some(cur) = queue.pop() {
            let here = side[cur].expect("queued tiles are labelled");
            for (o, _) in self.neighbours(cur) {
                match side[o] {
                    None => {
                        side[o] = Some(here);
                        queue.push(o);
                    }
                    Some(Side::On) => {}
                    Some(prev) => ensure!(prev == here, "inconsistent sides at tile {o}"),
                }
            }
        }
        side.into_iter()
            .map(|s| s.ok_or_else(|| Error::Invariant("tile not reached by side fill".into())))
            .collect()
    }

    /// The path of the maximal `a`-crossing: along strip `a` up to `[a,a+1]`,
    /// then back along strip `a+1`.
    pub fn maximal_crossing(&self, a: u8) -> Vec<TileId> {
        let pivot = self.id((a, a + 1));
        let first = self.strip(a);
        let second = self.strip(a + 1);
        let i = first.iter().position(|&x| x == pivot).expect("pivot on strip a");
        let j = second.iter().position(|&x| x == pivot).expect("pivot on strip a+1");
        let mut path: Vec<TileId> = first[..=i].to_vec();
        path.extend(second[..j].iter().rev());
        path
    }

    /// The `a`-comb: tiles of the maximal `a`-crossing and everything to its left.
    pub fn comb(&self, a: u8) -> Result<BTreeSet<TileId>> {
        let path = self.maximal_crossing(a);
        let sides = self.sides(
            &path,
            self.boundary_edge(a as usize),
            self.boundary_edge(a as usize + 1),
        )?;
        Ok((0..self.tiles.len()).filter(|&t| sides[t] != Side::Right).collect())
    }

    /// The pairs `(s, t)` visited while shrinking the triangle cut out by the
    /// strips `a`, `s`, `t` inside the comb, ending at a hexagon
    /// `{[a,s],[a,t],[s,t]}`. Empty when the comb is a single tile.
    pub fn comb_descent(&self, a: u8) -> Result<Vec<(u8, u8)>> {
        let comb = self.comb(a)?;
        if comb.len() <= 1 {
            return Ok(Vec::new());
        }
        let pivot = self.id((a, a + 1));
        let strip_b = self.strip(a + 1);
        let j = strip_b.iter().position(|&x| x == pivot).expect("pivot on strip a+1");
        ensure!(j > 0, "comb with several tiles has the pivot on the boundary");
        let mut s = a + 1;
        let mut t = self.tiles[strip_b[j - 1]].other_label(a + 1);
        let strip_a = self.strip(a);
        let pos_a = |x: u8| {
            let id = self.id((a.min(x), a.max(x)));
            strip_a.iter().position(|&y| y == id).expect("tile on strip a")
        };
        let mut trace = vec![(s, t)];
        for _ in 0..self.tiles.len() {
            if self.hexagon(&[(a, s), (a, t), (s, t)]).is_ok() {
                return Ok(trace);
            }
            let inside = sets::contains(self.tile_of((s.min(t), s.max(t))).base, a);
            let (ps, pt) = (pos_a(s), pos_a(t));
            let mut between: Vec<usize> = if ps < pt { (ps + 1..pt).collect() } else { (pt + 1..ps).rev().collect() };
            between.retain(|&k| {
                let x = self.tiles[strip_a[k]].other_label(a);
                x != s && x != t
            });
            let Some(&k) = between.first() else {
                return Err(Error::Invariant(format!("comb descent stuck at ({s},{t})")));
            };
            let tile_id = strip_a[k];
            let s2 = self.tiles[tile_id].other_label(a);
            let next = self.tiles[tile_id]
                .edges()
                .into_iter()
                .filter(|e| e.label == s2)
                .filter_map(|e| self.across(tile_id, e))
                .find(|&o| sets::contains(self.tiles[o].base, a) == inside)
                .ok_or_else(|| Error::Invariant("comb descent left the tiling".into()))?;
            s = s2;
            t = self.tiles[next].other_label(s2);
            trace.push((s, t));
        }
        Err(Error::Invariant("comb descent did not terminate".into()))
    }

    pub fn find_comb_hexagon(&self, a: u8) -> Result<Option<Hexagon>> {
        let trace = self.comb_descent(a)?;
        let Some(&(s, t)) = trace.last() else {
            return Ok(None);
        };
        let hex = self.hexagon(&[(a, s), (a, t), (s, t)])?;
        let comb = self.comb(a)?;
        ensure!(
            hex.pairs().iter().all(|&p| comb.contains(&self.id(p))),
            "comb hexagon leaves the comb"
        );
        Ok(Some(hex))
    }

    /// Recognises the three tiles with the given pairs as a hexagon.
    pub fn hexagon(&self, pairs: &[Pair; 3]) -> Result<Hexagon> {
        let mut labels: Vec<u8> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.sort();
        labels.dedup();
        let not_hex = || Error::NotHexagon(pairs.to_vec());
        if labels.len() != 3 || labels[0] == 0 || labels[2] as usize > self.n {
            return Err(not_hex());
        }
        let (s, t, u) = (labels[0], labels[1], labels[2]);
        let mut distinct: Vec<Pair> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != 3 {
            return Err(not_hex());
        }
        let st = self.tile_of((s, t)).base;
        let su = self.tile_of((s, u)).base;
        let tu = self.tile_of((t, u)).base;
        if su == st | sets::bit(t) && tu == st {
            Ok(Hexagon { s, t, u, base: st, form: HexagonForm::Lower })
        } else if tu == su | sets::bit(s) && st == su | sets::bit(u) {
            Ok(Hexagon { s, t, u, base: su, form: HexagonForm::Upper })
        } else {
            Err(not_hex())
        }
    }

    pub fn hexagons(&self) -> Vec<Hexagon> {
        let n = self.n as u8;
        let mut out = Vec::new();
        for s in 1..=n {
            for t in s + 1..=n {
                for u in t + 1..=n {
                    if let Ok(h) = self.hexagon(&[(s, t), (s, u), (t, u)]) {
                        out.push(h);
                    }
                }
            }
        }
        out
    }

    /// Flips `hex` and reports the braid move realising it.
    pub fn flip(&self, hex: &Hexagon) -> Result<Flip> {
        let found = self.hexagon(&hex.pairs())?;
        if found != *hex {
            return Err(Error::NotHexagon(hex.pairs().to_vec()));
        }
        let n = self.n;
        let targets: Vec<usize> = hex.pairs().iter().map(|&(a, b)| words::root_index(n, a, b)).collect();
        let consecutive = |letters: &[u8]| {
            let Ok(w) = ReducedWord::new(n, letters.to_vec()) else { return false };
            let order = words::convex_order(&w);
            order.windows(3).any(|win| {
                let mut ids: Vec<usize> = win.iter().map(|&(a, b)| words::root_index(n, a, b)).collect();
                ids.sort();
                let mut want = targets.clone();
                want.sort();
                ids == want
            })
        };
        let (_, word) = words::search_moves(&self.word, Some(MoveKind::Commutation), consecutive)?
            .ok_or_else(|| Error::Invariant("hexagon tiles never adjacent in the commutation class".into()))?;
        let order = words::convex_order(&word);
        let k = order
            .windows(3)
            .position(|win| win.iter().all(|p| hex.pairs().contains(p)))
            .expect("search goal guarantees a window");
        let braid = WordMove::braid(k + 1);
        let flipped_word = words::apply_move(&word, braid)?;
        let tiling = Tiling::new(&flipped_word);
        let mut expected = self.tiles.clone();
        for tile in hex.flipped().tiles() {
            expected[self.id(tile.pair())] = tile;
        }
        ensure!(tiling.tiles == expected, "braid move does not realise the flip");
        Ok(Flip { tiling, word, braid })
    }

    /// Tiles of the tiling turned by half a revolution, `[s,t;S] -> [s,t;[n]-S-{s,t}]`.
    pub fn rotated_tiles(&self) -> Vec<Tile> {
        let full = sets::full(self.n);
        self.tiles
            .iter()
            .map(|t| Tile { base: full & !(t.base | sets::bit(t.s) | sets::bit(t.t)), ..*t })
            .collect()
    }

    pub fn to_json(&self) -> TilingJson {
        TilingJson {
            n: self.n,
            tiles: self
                .order
                .iter()
                .map(|&id| {
                    let t = self.tiles[id];
                    TileJson { pair: [t.s, t.t], base: sets::elements(t.base) }
                })
                .collect(),
            order: self.word.letters().to_vec(),
        }
    }

    pub fn from_json(json: &TilingJson) -> Result<Self> {
        let word = ReducedWord::new(json.n, json.order.clone())?;
        let tiling = Tiling::new(&word);
        if json.tiles != tiling.to_json().tiles {
            return Err(Error::Malformed("tiles do not match the generating word".into()));
        }
        Ok(tiling)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiling(text: &str) -> Tiling {
        Tiling::new(&text.parse().unwrap())
    }

    fn pairs(t: &Tiling, ids: &[TileId]) -> Vec<Pair> {
        ids.iter().map(|&i| t.tile(i).pair()).collect()
    }

    #[test]
    fn tiles_from_words() {
        let t = tiling("212");
        let got: Vec<(Pair, Vec<u8>)> = t.order().iter().map(|&i| (t.tile(i).pair(), sets::elements(t.tile(i).base))).collect();
        assert_eq!(got, vec![((2, 3), vec![1]), ((1, 3), vec![]), ((1, 2), vec![3])]);
        let t = tiling("121");
        let got: Vec<(Pair, Vec<u8>)> = t.order().iter().map(|&i| (t.tile(i).pair(), sets::elements(t.tile(i).base))).collect();
        assert_eq!(got, vec![((1, 2), vec![]), ((1, 3), vec![2]), ((2, 3), vec![])]);
    }

    #[test]
    fn strips() {
        let t = tiling("121");
        assert_eq!(pairs(&t, &t.strip(1)), vec![(1, 2), (1, 3)]);
        let t = tiling("212");
        assert_eq!(pairs(&t, &t.strip(3)), vec![(2, 3), (1, 3)]);
    }

    #[test]
    fn kappa_small() {
        let t = tiling("121");
        let k = t.kappa(4).unwrap();
        assert_eq!(k.level[t.id((1, 3))], 1);
        assert_eq!(k.level[t.id((1, 2))], 2);
        assert_eq!(k.level[t.id((2, 3))], 3);
        assert!(t.s_leq(4, t.id((1, 3)), t.id((2, 3))).unwrap());
        assert!(!t.s_leq(4, t.id((2, 3)), t.id((1, 3))).unwrap());
    }

    #[test]
    fn flips() {
        let t = tiling("123121");
        let h = t.hexagon(&[(2, 3), (2, 4), (3, 4)]).unwrap();
        let f = t.flip(&h).unwrap();
        assert_eq!(f.tiling, tiling("123212"));
        let back = f.tiling.flip(&f.tiling.hexagon(&h.pairs()).unwrap()).unwrap();
        assert_eq!(back.tiling, t);
        let t = tiling("121");
        let h = t.hexagon(&[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(t.flip(&h).unwrap().tiling, tiling("212"));
    }
}
