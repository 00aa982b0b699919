//! Finite groupoids and the sector constructions built on them.
//!
//! Composition is written in diagrammatic order: for arrows `a: x -> y` and
//! `b: y -> z`, `compose(a, b): x -> z`. For the one-object groupoid of a
//! group this is plain multiplication `ab`, and a loop `a` conjugated along
//! `u` is `u^{-1} a u`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Default cap on the number of arrows any construction may materialise.
pub const DEFAULT_ARROW_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    source: Vec<u32>,
    target: Vec<u32>,
    identity: Vec<u32>,
    inverse: Vec<u32>,
    /// arrows leaving each object, ascending
    out: Vec<Vec<u32>>,
    /// position of each arrow inside `out[source(arrow)]`
    out_pos: Vec<u32>,
    /// `compose[a][out_pos[b]]` for every `b` leaving `target(a)`
    compose: Vec<Vec<u32>>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid from source/target tables and a composition
    /// function on composable pairs, then checks every axiom.
    pub fn new(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let g = Self::assemble(objects, source, target, compose)?;
        g.validate()?;
        Ok(g)
    }

    /// Like [`FiniteGroupoid::new`] but skips the associativity sweep;
    /// used for constructions that are correct by design.
    fn assemble(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = source.len();
        if target.len() != n {
            return Err(Error::validation("source and target tables differ in length", vec![]));
        }
        if let Some(a) = (0..n).find(|&a| source[a] >= objects || target[a] >= objects) {
            return Err(Error::validation("arrow endpoint out of range", vec![a]));
        }
        let mut out = vec![Vec::new(); objects];
        let mut out_pos = vec![0u32; n];
        for a in 0..n {
            out_pos[a] = out[source[a]].len() as u32;
            out[source[a]].push(a as u32);
        }
        let mut comp = Vec::with_capacity(n);
        for a in 0..n {
            let row: Vec<u32> = out[target[a]].iter().map(|&b| compose(a, b as usize) as u32).collect();
            if let Some(i) = row.iter().position(|&c| c as usize >= n) {
                return Err(Error::validation("composite out of range", vec![a, out[target[a]][i] as usize]));
            }
            comp.push(row);
        }
        let mut g = FiniteGroupoid {
            source: source.iter().map(|&x| x as u32).collect(),
            target: target.iter().map(|&x| x as u32).collect(),
            identity: vec![u32::MAX; objects],
            inverse: vec![u32::MAX; n],
            out,
            out_pos,
            compose: comp,
        };
        for x in 0..objects {
            let id = g.out[x].iter().map(|&e| e as usize).find(|&e| {
                g.target(e) == x
                    && g.out[x].iter().all(|&a| g.compose(e, a as usize) == a as usize)
                    && (0..n).filter(|&a| g.target(a) == x).all(|a| g.compose(a, e) == a)
            });
            match id {
                Some(e) => g.identity[x] = e as u32,
                None => return Err(Error::validation("object has no identity arrow", vec![x])),
            }
        }
        for a in 0..n {
            let (s, t) = (g.source(a), g.target(a));
            let inv = g.out[t]
                .iter()
                .map(|&b| b as usize)
                .find(|&b| g.target(b) == s && g.compose(a, b) == g.identity(s) && g.compose(b, a) == g.identity(t));
            match inv {
                Some(b) => g.inverse[a] = b as u32,
                None => return Err(Error::validation("arrow has no inverse", vec![a])),
            }
        }
        Ok(g)
    }

    /// Checks that composition respects endpoints and is associative.
    pub fn validate(&self) -> Result<()> {
        for a in 0..self.arrow_count() {
            for &b in &self.out[self.target(a)] {
                let b = b as usize;
                let ab = self.compose(a, b);
                if self.source(ab) != self.source(a) || self.target(ab) != self.target(b) {
                    return Err(Error::validation("composite has wrong endpoints", vec![a, b]));
                }
                for &c in &self.out[self.target(b)] {
                    let c = c as usize;
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c)) {
                        return Err(Error::validation("composition is not associative", vec![a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        FiniteGroupoid {
            source: vec![],
            target: vec![],
            identity: vec![],
            inverse: vec![],
            out: vec![],
            out_pos: vec![],
            compose: vec![],
        }
    }

    pub fn object_count(&self) -> usize {
        self.identity.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.source.len()
    }

    #[inline]
    pub fn source(&self, a: usize) -> usize {
        self.source[a] as usize
    }

    #[inline]
    pub fn target(&self, a: usize) -> usize {
        self.target[a] as usize
    }

    #[inline]
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn is_loop(&self, a: usize) -> bool {
        self.source[a] == self.target[a]
    }

    pub fn arrows_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[x].iter().map(|&a| a as usize)
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.out[x].len()
    }

    /// Composite of `a` followed by `b`. Panics unless `target(a) == source(b)`.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        debug_assert_eq!(self.target[a], self.source[b], "arrows {a} and {b} are not composable");
        self.compose[a][self.out_pos[b] as usize] as usize
    }

    pub fn try_compose(&self, a: usize, b: usize) -> Option<usize> {
        (self.target[a] == self.source[b]).then(|| self.compose(a, b))
    }

    /// `u^{-1} a u` for a loop `a` at `source(u)`.
    #[inline]
    pub fn conjugate(&self, a: usize, u: usize) -> usize {
        self.compose(self.compose(self.inverse(u), a), u)
    }

    pub fn loops_at(&self, x: usize) -> Vec<usize> {
        self.arrows_from(x).filter(|&a| self.target(a) == x).collect()
    }

    /// Composable r-tuples in lexicographic order. For `r == 0` the tuples
    /// are single objects `[x]`.
    pub fn nerve(&self, r: usize) -> Nerve<'_> {
        Nerve::new(self, r)
    }

    pub fn nerve_len(&self, r: usize) -> usize {
        if r == 0 {
            return self.object_count();
        }
        // count by dynamic programming over the last arrow's target
        let mut ending: Vec<usize> = vec![0; self.object_count()];
        for a in 0..self.arrow_count() {
            ending[self.target(a)] += 1;
        }
        for _ in 1..r {
            let mut next = vec![0; self.object_count()];
            for a in 0..self.arrow_count() {
                next[self.target(a)] += ending[self.source(a)];
            }
            ending = next;
        }
        ending.iter().sum()
    }

    /// True when consecutive arrows are composable.
    pub fn is_composable(&self, tuple: &[usize]) -> bool {
        tuple.windows(2).all(|w| self.target(w[0]) == self.source(w[1]))
    }

    /// Connected components as sorted object lists, ordered by least object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.object_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for x in 0..n {
            if comp[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self.arrows_from(x).map(|a| self.target(a)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                comp[m] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// Isotropy group of `x` as an abstract group.
    pub fn vertex_group(&self, x: usize) -> FiniteGroup {
        let loops = self.loops_at(x);
        let pos: HashMap<usize, usize> = loops.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let table = loops
            .iter()
            .map(|&a| loops.iter().map(|&b| pos[&self.compose(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(table, None, usize::MAX).expect("isotropy is a group")
    }

    /// The full subgroupoid on `objects` (which must be sorted), together
    /// with the map from its arrows back to arrows of `self`.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> (FiniteGroupoid, Vec<usize>) {
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut arrows = Vec::new();
        for &x in objects {
            arrows.extend(self.arrows_from(x).filter(|&a| pos.contains_key(&self.target(a))));
        }
        let back: HashMap<usize, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let source = arrows.iter().map(|&a| pos[&self.source(a)]).collect();
        let target = arrows.iter().map(|&a| pos[&self.target(a)]).collect();
        let g = Self::assemble(objects.len(), source, target, |i, j| back[&self.compose(arrows[i], arrows[j])])
            .expect("full subgroupoid of a groupoid");
        (g, arrows)
    }

    /// Isomorphism test. A finite groupoid is determined up to isomorphism
    /// by the multiset of (component size, isotropy group) pairs, so we
    /// compare cheap signatures first and match isotropy groups by
    /// backtracking only within equal signatures.
    pub fn is_isomorphic(&self, other: &FiniteGroupoid) -> bool {
        if self.object_count() != other.object_count() || self.arrow_count() != other.arrow_count() {
            return false;
        }
        let summary = |g: &FiniteGroupoid| {
            let mut v: Vec<(usize, usize, Vec<usize>, FiniteGroup)> = g
                .components()
                .into_iter()
                .map(|c| {
                    let vg = g.vertex_group(c[0]);
                    let mut prof: Vec<usize> = vg.elements().map(|e| vg.element_order(e)).collect();
                    prof.sort_unstable();
                    (c.len(), vg.order(), prof, vg)
                })
                .collect();
            v.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
            v
        };
        let (a, b) = (summary(self), summary(other));
        if a.len() != b.len() {
            return false;
        }
        let mut used = vec![false; b.len()];
        a.iter().all(|(n, o, p, g)| {
            let hit = b.iter().enumerate().position(|(j, (m, q, r, h))| {
                !used[j] && n == m && o == q && p == r && g.is_isomorphic(h)
            });
            match hit {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

/// Lexicographic enumeration of composable tuples.
pub struct Nerve<'a> {
    g: &'a FiniteGroupoid,
    r: usize,
    stack: Vec<usize>,
    tuple: Vec<usize>,
    started: bool,
    next_object: usize,
}

impl<'a> Nerve<'a> {
    fn new(g: &'a FiniteGroupoid, r: usize) -> Self {
        Nerve { g, r, stack: Vec::new(), tuple: Vec::new(), started: false, next_object: 0 }
    }

    fn candidates(&self, depth: usize) -> &'a [u32] {
        if depth == 0 {
            unreachable!("depth 0 handled separately")
        }
        let prev = self.tuple[depth - 1];
        &self.g.out[self.g.target(prev)]
    }

    /// Fills positions `from..r` with the least available choices.
    fn descend(&mut self, from: usize) -> bool {
        let mut d = from;
        while d < self.r {
            let cands = self.candidates(d);
            if cands.is_empty() {
                return false;
            }
            self.stack.truncate(d);
            self.tuple.truncate(d);
            self.stack.push(0);
            self.tuple.push(cands[0] as usize);
            d += 1;
        }
        true
    }
}

impl Iterator for Nerve<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.r == 0 {
            if self.next_object < self.g.object_count() {
                self.next_object += 1;
                return Some(vec![self.next_object - 1]);
            }
            return None;
        }
        let n = self.g.arrow_count();
        if !self.started {
            self.started = true;
            let mut first = 0;
            while first < n {
                self.stack = vec![first];
                self.tuple = vec![first];
                if self.descend(1) {
                    return Some(self.tuple.clone());
                }
                first += 1;
            }
            return None;
        }
        // advance the deepest position that still has room
        let mut d = self.r;
        loop {
            if d == 0 {
                return None;
            }
            d -= 1;
            loop {
                let next_idx = self.stack[d] + 1;
                let len = if d == 0 { n } else { self.candidates(d).len() };
                if next_idx >= len {
                    break;
                }
                self.stack[d] = next_idx;
                self.tuple[d] = if d == 0 { next_idx } else { self.candidates(d)[next_idx] as usize };
                if self.descend(d + 1) {
                    return Some(self.tuple.clone());
                }
            }
        }
    }
}

/// Action groupoid `[X/G]` of a right action `x . g`, given as a table
/// `action[x][g]`. Arrows are `(x, g)` at index `x |G| + g` with
/// `s(x,g) = x` and `t(x,g) = x . g`.
pub fn action_groupoid(group: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let n = group.order();
    let points = action.len();
    for (x, row) in action.iter().enumerate() {
        if row.len() != n {
            return Err(Error::validation("action row has wrong length", vec![x]));
        }
        if row[0] != x {
            return Err(Error::validation("identity does not act trivially", vec![x]));
        }
        for g in group.elements() {
            if row[g] >= points {
                return Err(Error::validation("action moves point out of range", vec![x, g]));
            }
            for h in group.elements() {
                if action[row[g]][h] != row[group.mul(g, h)] {
                    return Err(Error::validation("not a right action", vec![x, g, h]));
                }
            }
        }
    }
    let source = (0..points * n).map(|a| a / n).collect();
    let target = (0..points * n).map(|a| action[a / n][a % n]).collect();
    FiniteGroupoid::assemble(points, source, target, |a, b| (a / n) * n + group.mul(a % n, b % n))
}

/// `[*/G]`: one object, arrow index equal to the group element.
pub fn point_groupoid(group: &FiniteGroup) -> FiniteGroupoid {
    action_groupoid(group, &[vec![0; group.order()]]).expect("trivial action")
}

/// The discrete groupoid on `n` objects.
pub fn discrete_groupoid(n: usize) -> FiniteGroupoid {
    action_groupoid(&FiniteGroup::trivial(), &vec![vec![0]; n].iter().enumerate().map(|(i, _)| vec![i]).collect::<Vec<_>>())
        .expect("trivial group acts")
}

/// The groupoid of k-sectors of a base groupoid: objects are k-tuples of
/// loops at a common object, arrows append a conjugator `u` and act by
/// simultaneous conjugation. For `k = 1` this is the inertia groupoid.
#[derive(Debug, Clone)]
pub struct SectorGroupoid {
    k: usize,
    loops: Vec<Vec<u32>>,
    base_object: Vec<u32>,
    arrow_object: Vec<u32>,
    arrow_conj: Vec<u32>,
    offset: Vec<u32>,
    index: HashMap<Vec<u32>, u32>,
    groupoid: FiniteGroupoid,
}

impl SectorGroupoid {
    pub fn new(base: &FiniteGroupoid, k: usize) -> Result<Self> {
        Self::with_cap(base, k, DEFAULT_ARROW_CAP)
    }

    pub fn with_cap(base: &FiniteGroupoid, k: usize, cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("k-sectors need k >= 1"));
        }
        let mut tuples: Vec<Vec<u32>> = Vec::new();
        let mut arrow_total = 0usize;
        for x in 0..base.object_count() {
            let loops = base.loops_at(x);
            let count = loops.len().checked_pow(k as u32).unwrap_or(usize::MAX);
            arrow_total = arrow_total.saturating_add(count.saturating_mul(base.out_degree(x)));
            if arrow_total > cap {
                return Err(Error::CapExceeded { what: format!("{k}-sector arrows"), size: arrow_total, cap });
            }
            let mut idx = vec![0usize; k];
            if loops.is_empty() {
                continue;
            }
            loop {
                tuples.push(idx.iter().map(|&i| loops[i] as u32).collect());
                let mut d = k;
                loop {
                    if d == 0 {
                        break;
                    }
                    d -= 1;
                    idx[d] += 1;
                    if idx[d] < loops.len() {
                        break;
                    }
                    idx[d] = 0;
                    if d == 0 {
                        d = usize::MAX;
                        break;
                    }
                }
                if d == usize::MAX {
                    break;
                }
            }
        }
        tuples.sort();
        let index: HashMap<Vec<u32>, u32> = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        let base_object: Vec<u32> = tuples.iter().map(|t| base.source(t[0] as usize) as u32).collect();

        let mut offset = Vec::with_capacity(tuples.len());
        let mut arrow_object = Vec::new();
        let mut arrow_conj = Vec::new();
        let mut target = Vec::new();
        for (o, t) in tuples.iter().enumerate() {
            offset.push(arrow_object.len() as u32);
            let x = base_object[o] as usize;
            for u in base.arrows_from(x) {
                let conj: Vec<u32> = t.iter().map(|&a| base.conjugate(a as usize, u) as u32).collect();
                arrow_object.push(o as u32);
                arrow_conj.push(u as u32);
                target.push(index[&conj] as usize);
            }
        }
        let source: Vec<usize> = arrow_object.iter().map(|&o| o as usize).collect();
        let groupoid = FiniteGroupoid::assemble(tuples.len(), source, target.clone(), |a, b| {
            let o = arrow_object[a] as usize;
            let uv = base.compose(arrow_conj[a] as usize, arrow_conj[b] as usize);
            offset[o] as usize + base.out_pos[uv] as usize
        })?;
        Ok(SectorGroupoid { k, loops: tuples, base_object, arrow_object, arrow_conj, offset, index, groupoid })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    /// The loops `(a_1, ..., a_k)` making up sector object `o`.
    pub fn loops(&self, o: usize) -> Vec<usize> {
        self.loops[o].iter().map(|&a| a as usize).collect()
    }

    pub fn loop_at(&self, o: usize, i: usize) -> usize {
        self.loops[o][i] as usize
    }

    pub fn base_object(&self, o: usize) -> usize {
        self.base_object[o] as usize
    }

    pub fn object_of(&self, loops: &[usize]) -> Option<usize> {
        let key: Vec<u32> = loops.iter().map(|&a| a as u32).collect();
        self.index.get(&key).map(|&o| o as usize)
    }

    /// Sector arrow leaving object `o` along base arrow `u`.
    pub fn arrow(&self, base: &FiniteGroupoid, o: usize, u: usize) -> usize {
        debug_assert_eq!(base.source(u), self.base_object(o));
        self.offset[o] as usize + base.out_pos[u] as usize
    }

    /// `(source object, conjugating base arrow)` of a sector arrow.
    pub fn arrow_parts(&self, alpha: usize) -> (usize, usize) {
        (self.arrow_object[alpha] as usize, self.arrow_conj[alpha] as usize)
    }

    /// Splits a sector nerve tuple into its starting loops and the base
    /// conjugators `(u_1, ..., u_r)`.
    pub fn split_tuple(&self, tuple: &[usize]) -> (usize, Vec<usize>) {
        let o = self.arrow_object[tuple[0]] as usize;
        (o, tuple.iter().map(|&a| self.arrow_conj[a] as usize).collect())
    }

    /// Reassembles a sector nerve tuple from loops and conjugators.
    pub fn join_tuple(&self, base: &FiniteGroupoid, o: usize, us: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(us.len());
        let mut cur = o;
        for &u in us {
            let a = self.arrow(base, cur, u);
            out.push(a);
            cur = self.groupoid.target(a);
        }
        out
    }
}

/// A groupoid homomorphism given by object and arrow tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidHom {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
    /// `(objects, arrows)` of the codomain, for compatibility checks.
    pub codomain_size: (usize, usize),
}

impl GroupoidHom {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidHom {
            object_map: (0..g.object_count()).collect(),
            arrow_map: (0..g.arrow_count()).collect(),
            codomain_size: (g.object_count(), g.arrow_count()),
        }
    }

    pub fn object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn arrow(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    /// Image of a nerve tuple (an object tuple `[x]` in degree 0).
    pub fn map_tuple(&self, tuple: &[usize], degree: usize) -> Vec<usize> {
        if degree == 0 {
            vec![self.object_map[tuple[0]]]
        } else {
            tuple.iter().map(|&a| self.arrow_map[a]).collect()
        }
    }

    pub fn then(&self, next: &GroupoidHom) -> GroupoidHom {
        GroupoidHom {
            object_map: self.object_map.iter().map(|&x| next.object_map[x]).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| next.arrow_map[a]).collect(),
            codomain_size: next.codomain_size,
        }
    }

    /// Checks compatibility with source, target, identities and composition.
    pub fn validate(&self, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> Result<()> {
        if self.object_map.len() != src.object_count() || self.arrow_map.len() != src.arrow_count() {
            return Err(Error::usage("homomorphism tables do not match the source groupoid"));
        }
        if self.codomain_size != (dst.object_count(), dst.arrow_count()) {
            return Err(Error::usage("homomorphism codomain does not match"));
        }
        for a in 0..src.arrow_count() {
            let fa = self.arrow(a);
            if dst.source(fa) != self.object(src.source(a)) || dst.target(fa) != self.object(src.target(a)) {
                return Err(Error::validation("homomorphism breaks source/target", vec![a]));
            }
            for b in src.arrows_from(src.target(a)) {
                if self.arrow(src.compose(a, b)) != dst.compose(fa, self.arrow(b)) {
                    return Err(Error::validation("homomorphism breaks composition", vec![a, b]));
                }
            }
        }
        for x in 0..src.object_count() {
            if self.arrow(src.identity(x)) != dst.identity(self.object(x)) {
                return Err(Error::validation("homomorphism breaks identities", vec![x]));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> bool {
        let bijective = |map: &[usize], n: usize| {
            let mut hit = vec![false; n];
            map.len() == n
                && map.iter().all(|&m| {
                    let fresh = !hit[m];
                    hit[m] = true;
                    fresh
                })
        };
        self.validate(src, dst).is_ok()
            && bijective(&self.object_map, dst.object_count())
            && bijective(&self.arrow_map, dst.arrow_count())
    }
}

/// Selects one of the evaluation maps out of the 2-sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    /// `(a, b) -> a` into the inertia groupoid
    First,
    /// `(a, b) -> b` into the inertia groupoid
    Second,
    /// `(a, b) -> ab` into the inertia groupoid
    Product,
    /// `(a_1, ..., a_k) -> common base object`
    Base,
}

/// Evaluation homomorphism out of a sector groupoid. `First`, `Second`
/// and `Product` need `source.k() == 2` and `target` the inertia groupoid;
/// `Base` accepts any k and ignores `target`.
pub fn evaluation_hom(
    which: Evaluation,
    base: &FiniteGroupoid,
    source: &SectorGroupoid,
    target: &SectorGroupoid,
) -> Result<GroupoidHom> {
    let g = source.groupoid();
    match which {
        Evaluation::Base => Ok(GroupoidHom {
            object_map: (0..g.object_count()).map(|o| source.base_object(o)).collect(),
            arrow_map: (0..g.arrow_count()).map(|a| source.arrow_parts(a).1).collect(),
            codomain_size: (base.object_count(), base.arrow_count()),
        }),
        _ => {
            if source.k() != 2 || target.k() != 1 {
                return Err(Error::usage(format!(
                    "{which:?} evaluation needs 2-sectors into the inertia groupoid, got k = {} -> {}",
                    source.k(),
                    target.k()
                )));
            }
            let pick = |o: usize| match which {
                Evaluation::First => source.loop_at(o, 0),
                Evaluation::Second => source.loop_at(o, 1),
                _ => base.compose(source.loop_at(o, 0), source.loop_at(o, 1)),
            };
            sector_map(base, source, target, |o| vec![pick(o)])
        }
    }
}

/// Homomorphism between sector groupoids induced by a map on loop tuples
/// that commutes with simultaneous conjugation; arrows keep their conjugator.
pub fn sector_map(
    base: &FiniteGroupoid,
    source: &SectorGroupoid,
    target: &SectorGroupoid,
    on_loops: impl Fn(usize) -> Vec<usize>,
) -> Result<GroupoidHom> {
    let g = source.groupoid();
    let mut object_map = Vec::with_capacity(g.object_count());
    for o in 0..g.object_count() {
        let img = on_loops(o);
        let t = target
            .object_of(&img)
            .ok_or_else(|| Error::usage(format!("loop tuple {img:?} is not an object of the target")))?;
        object_map.push(t);
    }
    let arrow_map = (0..g.arrow_count())
        .map(|a| {
            let (o, u) = source.arrow_parts(a);
            target.arrow(base, object_map[o], u)
        })
        .collect();
    Ok(GroupoidHom {
        object_map,
        arrow_map,
        codomain_size: (target.groupoid().object_count(), target.groupoid().arrow_count()),
    })
}

/// `e_{i_1 ... i_l}`: keeps the listed coordinates (0-based) of each tuple.
pub fn projection_hom(
    base: &FiniteGroupoid,
    source: &SectorGroupoid,
    indices: &[usize],
    target: &SectorGroupoid,
) -> Result<GroupoidHom> {
    if indices.len() != target.k() || indices.iter().any(|&i| i >= source.k()) {
        return Err(Error::usage("projection indices incompatible with sector degrees"));
    }
    sector_map(base, source, target, |o| indices.iter().map(|&i| source.loop_at(o, i)).collect())
}

/// Embedding `x -> (1_x, ..., 1_x)` of the base into its k-sectors; for
/// k = 1 this is the untwisted-sector embedding of the inertia groupoid.
pub fn unit_embedding(base: &FiniteGroupoid, target: &SectorGroupoid) -> GroupoidHom {
    let object_map: Vec<usize> = (0..base.object_count())
        .map(|x| target.object_of(&vec![base.identity(x); target.k()]).expect("identity tuple"))
        .collect();
    let arrow_map = (0..base.arrow_count()).map(|u| target.arrow(base, object_map[base.source(u)], u)).collect();
    GroupoidHom {
        object_map,
        arrow_map,
        codomain_size: (target.groupoid().object_count(), target.groupoid().arrow_count()),
    }
}

/// Swap `(a, b) -> (b, a)` on the 2-sectors.
pub fn swap_hom(base: &FiniteGroupoid, two: &SectorGroupoid) -> Result<GroupoidHom> {
    if two.k() != 2 {
        return Err(Error::usage("swap needs 2-sectors"));
    }
    sector_map(base, two, two, |o| vec![two.loop_at(o, 1), two.loop_at(o, 0)])
}

/// The rotation `(g1, g2, g3) -> (g2, g3, g3^{-1} g2^{-1} g1 g2 g3)` of the
/// 3-sectors. It preserves the total product and its cube is conjugation
/// by `g1 g2 g3`.
pub fn i3_rotation(base: &FiniteGroupoid, three: &SectorGroupoid) -> Result<GroupoidHom> {
    if three.k() != 3 {
        return Err(Error::usage("the rotation acts on 3-sectors"));
    }
    sector_map(base, three, three, |o| {
        let (g1, g2, g3) = (three.loop_at(o, 0), three.loop_at(o, 1), three.loop_at(o, 2));
        let g23 = base.compose(g2, g3);
        vec![g2, g3, base.conjugate(g1, g23)]
    })
}

/// A groupoid fibered product together with its object and arrow labels.
#[derive(Debug, Clone)]
pub struct FiberedProduct {
    pub groupoid: FiniteGroupoid,
    /// `(y, gamma, z)` with `gamma: f(y) -> g(z)`
    pub objects: Vec<(usize, usize, usize)>,
    /// `(h, k)` pairs of arrows of the two factors
    pub arrows: Vec<(usize, usize)>,
}

/// `H x_G K` for `f: H -> G` and `g: K -> G`. An arrow `(h, k)` goes from
/// `(y, gamma, z)` to `(y', gamma', z')` where `f(h) gamma' = gamma g(k)`.
pub fn fibered_product(
    f: &GroupoidHom,
    h_src: &FiniteGroupoid,
    g: &GroupoidHom,
    k_src: &FiniteGroupoid,
    target: &FiniteGroupoid,
) -> Result<FiberedProduct> {
    let size = (target.object_count(), target.arrow_count());
    if f.codomain_size != size || g.codomain_size != size {
        return Err(Error::usage("fibered product factors have different targets"));
    }
    let mut objects = Vec::new();
    for y in 0..h_src.object_count() {
        for z in 0..k_src.object_count() {
            let (fy, gz) = (f.object(y), g.object(z));
            for gamma in target.arrows_from(fy).filter(|&a| target.target(a) == gz) {
                objects.push((y, gamma, z));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut arrows = Vec::new();
    let mut source = Vec::new();
    let mut tgt = Vec::new();
    for (i, &(y, gamma, z)) in objects.iter().enumerate() {
        for h in h_src.arrows_from(y) {
            for k in k_src.arrows_from(z) {
                let gamma2 = target.compose(target.compose(target.inverse(f.arrow(h)), gamma), g.arrow(k));
                let t = index[&(h_src.target(h), gamma2, k_src.target(k))];
                arrows.push((h, k));
                source.push(i);
                tgt.push(t);
            }
        }
    }
    let arrow_index: HashMap<(usize, usize, usize), usize> =
        arrows.iter().zip(&source).enumerate().map(|(i, (&(h, k), &s))| ((s, h, k), i)).collect();
    let groupoid = FiniteGroupoid::assemble(objects.len(), source.clone(), tgt, |a, b| {
        let (h1, k1) = arrows[a];
        let (h2, k2) = arrows[b];
        arrow_index[&(source[a], h_src.compose(h1, h2), k_src.compose(k1, k2))]
    })?;
    Ok(FiberedProduct { groupoid, objects, arrows })
}

/// One entry per conjugacy class: the representative and its centralizer.
/// Witnesses the decomposition of the inertia of `[*/G]` into `[*/Z_G(g)]`.
pub fn sector_decomposition(group: &FiniteGroup) -> Vec<(usize, Subgroup)> {
    group.conjugacy_classes().representatives().map(|g| (g, group.centralizer(g))).collect()
}
