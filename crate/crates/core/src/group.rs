//! Finite groups as dense multiplication tables.
//!
//! Elements are indices in `0..order` with the identity at index 0. Every
//! constructor validates the group axioms exhaustively, so the rest of the
//! crate can rely on table lookups without further checks.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on group order; the |G|^4 sweeps downstream get expensive fast.
pub const DEFAULT_ORDER_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, normalising the
    /// identity to index 0 and checking every axiom.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>, cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::validation("empty multiplication table", vec![]));
        }
        if n > cap {
            return Err(Error::CapExceeded { what: "group order".into(), size: n, cap });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation("multiplication table row has wrong length", vec![i]));
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(Error::validation("table entry out of range", vec![i, j]));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::validation("no two-sided identity", vec![]))?;

        // relabel so that the identity sits at index 0
        let perm: Vec<usize> = (0..n)
            .map(|i| if i == 0 { e } else if i == e { 0 } else { i })
            .collect();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = perm[table[perm[a]][perm[b]]] as u32;
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => perm.iter().map(|&p| l[p].clone()).collect(),
            Some(_) => return Err(Error::validation("label count differs from order", vec![])),
            None => perm.iter().map(|p| p.to_string()).collect(),
        };
        Self::from_normalized(n, mult, labels)
    }

    fn from_normalized(n: usize, mult: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        let mut inv = vec![u32::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mult[g * n + h] == 0) {
                Some(h) if mult[h * n + g] == 0 => inv[g] = h as u32,
                _ => return Err(Error::validation("element has no two-sided inverse", vec![g])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b] as usize;
                for c in 0..n {
                    let bc = mult[b * n + c] as usize;
                    if mult[ab * n + c] != mult[a * n + bc] {
                        return Err(Error::validation("multiplication is not associative", vec![a, b, c]));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, mult, inv, labels })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let mult = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let inv = (0..n).map(|g| ((n - g) % n) as u32).collect();
        let labels = (0..n).map(|g| g.to_string()).collect();
        FiniteGroup { order: n, mult, inv, labels }
    }

    /// (Z/p)^n with element index `sum a_i p^i`.
    pub fn elementary_abelian(p: usize, n: usize) -> Self {
        let mut g = Self::cyclic(p);
        for _ in 1..n {
            g = Self::direct_product(&g, &Self::cyclic(p));
        }
        if n == 0 {
            g = Self::trivial();
        }
        let order = g.order;
        g.labels = (0..order)
            .map(|mut i| {
                let mut digits = Vec::with_capacity(n);
                for _ in 0..n {
                    digits.push((i % p).to_string());
                    i /= p;
                }
                format!("({})", digits.join(","))
            })
            .collect();
        g
    }

    /// A x B with `(a, b)` stored at index `a + |A| * b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let split = |i: usize| (i % na, i / na);
        let mut mult = vec![0u32; n * n];
        for x in 0..n {
            let (xa, xb) = split(x);
            for y in 0..n {
                let (ya, yb) = split(y);
                mult[x * n + y] = (a.mul(xa, ya) + na * b.mul(xb, yb)) as u32;
            }
        }
        let inv = (0..n)
            .map(|x| {
                let (xa, xb) = split(x);
                (a.inv(xa) + na * b.inv(xb)) as u32
            })
            .collect();
        let labels = (0..n)
            .map(|x| {
                let (xa, xb) = split(x);
                format!("({},{})", a.labels[xa], b.labels[xb])
            })
            .collect();
        FiniteGroup { order: n, mult, inv, labels }
    }

    /// Symmetric group on `n <= 4` letters. Permutations are listed in
    /// lexicographic order of their one-line notation and multiplied left
    /// to right: `(s * t)(i) = t(s(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 4 {
            return Err(Error::usage(format!("symmetric group supported for 1 <= n <= 4, got {n}")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let m = perms.len();
        let mut table = vec![vec![0usize; m]; m];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let st: Vec<usize> = (0..n).map(|k| t[s[k]]).collect();
                table[i][j] = index(&st);
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(table, Some(labels), usize::MAX)
    }

    /// Dihedral group of order `2n`, element `r^i s^j` at index `i + n j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("dihedral group needs n >= 1"));
        }
        let m = 2 * n;
        let mut table = vec![vec![0usize; m]; m];
        for x in 0..m {
            let (i, j) = (x % n, x / n);
            for y in 0..m {
                let (k, l) = (y % n, y / n);
                let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                table[x][y] = rot + n * ((j + l) % 2);
            }
        }
        let labels = (0..m)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (i, 0) => format!("r{i}"),
                    (0, _) => "s".to_string(),
                    (i, _) => format!("r{i}s"),
                }
            })
            .collect();
        Self::from_table(table, Some(labels), usize::MAX)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `u^{-1} g u`, the right conjugation action used throughout.
    #[inline]
    pub fn conj(&self, g: usize, u: usize) -> usize {
        self.mul(self.mul(self.inv(u), g), u)
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commute(a, b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, num::integer::lcm)
    }

    /// Row-major copy of the multiplication table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        Subgroup { members: self.elements().filter(|&h| self.commute(g, h)).collect() }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { members: (0..self.order).filter(|&i| seen[i]).collect() }
    }

    pub fn conjugacy_classes(&self) -> ConjugacyPartition {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in self.elements() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = self.elements().map(|u| self.conj(g, u)).collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        ConjugacyPartition { classes, class_of }
    }

    /// Every subgroup, ordered by decreasing order and then by member list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![0usize]];
        found.insert(vec![0]);
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let s = self.subgroup_generated(&gens).members;
                if found.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        subs.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members.cmp(&b.members)));
        subs
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated(&[]);
        for g in self.elements() {
            if !span.contains(g) {
                gens.push(g);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// All homomorphisms into Z/n, as value tables `G -> 0..n`.
    pub fn homs_to_cyclic(&self, n: usize) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(h) = self.extend_hom(&gens, &images, n) {
                out.push(h);
            }
            // odometer over generator images
            let mut i = 0;
            loop {
                if i == gens.len() {
                    return out;
                }
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
        }
    }

    fn extend_hom(&self, gens: &[usize], images: &[usize], n: usize) -> Option<Vec<usize>> {
        let mut value = vec![usize::MAX; self.order];
        value[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &img) in gens.iter().zip(images) {
                let y = self.mul(x, s);
                let v = (value[x] + img) % n;
                if value[y] == usize::MAX {
                    value[y] = v;
                    queue.push_back(y);
                } else if value[y] != v {
                    return None;
                }
            }
        }
        let ok = self
            .elements()
            .all(|a| self.elements().all(|b| value[self.mul(a, b)] == (value[a] + value[b]) % n));
        ok.then_some(value)
    }

    /// Restricts to a subgroup, re-indexed so that `members[i]` becomes `i`.
    pub fn restrict(&self, sub: &Subgroup) -> FiniteGroup {
        let m = sub.members.len();
        let pos = |g: usize| sub.members.binary_search(&g).expect("subgroup not closed");
        let mut mult = vec![0u32; m * m];
        for (i, &a) in sub.members.iter().enumerate() {
            for (j, &b) in sub.members.iter().enumerate() {
                mult[i * m + j] = pos(self.mul(a, b)) as u32;
            }
        }
        let inv = sub.members.iter().map(|&a| pos(self.inv(a)) as u32).collect();
        let labels = sub.members.iter().map(|&a| self.labels[a].clone()).collect();
        FiniteGroup { order: m, mult, inv, labels }
    }

    /// Decides group isomorphism by backtracking over images of a generating set.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order != other.order {
            return false;
        }
        let mut profile_a: Vec<usize> = self.elements().map(|g| self.element_order(g)).collect();
        let mut profile_b: Vec<usize> = other.elements().map(|g| other.element_order(g)).collect();
        profile_a.sort_unstable();
        profile_b.sort_unstable();
        if profile_a != profile_b || self.is_abelian() != other.is_abelian() {
            return false;
        }
        let gens = self.generators();
        let mut images = Vec::with_capacity(gens.len());
        self.search_iso(other, &gens, &mut images)
    }

    fn search_iso(&self, other: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> bool {
        if images.len() == gens.len() {
            return self.extend_iso(other, gens, images);
        }
        let want = self.element_order(gens[images.len()]);
        for cand in other.elements() {
            if other.element_order(cand) != want {
                continue;
            }
            images.push(cand);
            if self.search_iso(other, gens, images) {
                return true;
            }
            images.pop();
        }
        false
    }

    fn extend_iso(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = self.mul(x, s);
                let fy = other.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return false;
                }
            }
        }
        let mut hit = vec![false; self.order];
        for &m in &map {
            if hit[m] {
                return false;
            }
            hit[m] = true;
        }
        self.elements()
            .all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("({})", body.join(" ")));
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// A subgroup as a sorted list of element indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

/// Conjugacy classes ordered by representative, the minimal index in each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    pub fn class_index(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn representative_of(&self, g: usize) -> usize {
        self.classes[self.class_of[g]][0]
    }
}

/// Group descriptions accepted by [`parse_group_spec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    ElementaryAbelian { p: usize, n: usize },
    Symmetric(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(Vec<Vec<usize>>),
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let order = self.order_hint();
        if order > cap {
            return Err(Error::CapExceeded { what: "group order".into(), size: order, cap });
        }
        Ok(match self {
            GroupSpec::Cyclic(0) => return Err(Error::usage("cyclic group needs n >= 1")),
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::ElementaryAbelian { p, n } => {
                if *p < 2 {
                    return Err(Error::usage("elementary abelian group needs p >= 2"));
                }
                FiniteGroup::elementary_abelian(*p, *n)
            }
            GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n)?,
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n)?,
            GroupSpec::Product(a, b) => FiniteGroup::direct_product(&a.build(cap)?, &b.build(cap)?),
            GroupSpec::Table(t) => FiniteGroup::from_table(t.clone(), None, cap)?,
        })
    }

    fn order_hint(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::ElementaryAbelian { p, n } => p.saturating_pow(*n as u32),
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Product(a, b) => a.order_hint().saturating_mul(b.order_hint()),
            GroupSpec::Table(t) => t.len(),
        }
    }
}

/// Parses the group-spec text format: either `order N` followed by N rows of
/// the multiplication table, or a shorthand (`cyclic N`, `elemab P N`,
/// `symmetric N`, `dihedral N`, `product <spec> <spec>`). Lines starting
/// with `#` are comments.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let Some(&(first_line, first)) = lines.first() else {
        return Err(Error::parse(0, "empty group spec"));
    };
    let mut head = first.split_whitespace();
    if head.next() == Some("order") {
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(first_line, "expected `order N`"))?;
        if lines.len() != n + 1 {
            return Err(Error::parse(first_line, format!("expected {n} table rows, found {}", lines.len() - 1)));
        }
        let mut table = Vec::with_capacity(n);
        for &(ln, l) in &lines[1..] {
            let row: std::result::Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| Error::parse(ln, "non-integer table entry"))?;
            if row.len() != n {
                return Err(Error::parse(ln, format!("expected {n} entries, found {}", row.len())));
            }
            table.push(row);
        }
        return Ok(GroupSpec::Table(table));
    }
    let tokens: Vec<&str> = lines.iter().flat_map(|(_, l)| l.split_whitespace()).collect();
    let mut pos = 0;
    let spec = parse_tokens(&tokens, &mut pos).map_err(|m| Error::parse(first_line, m))?;
    if pos != tokens.len() {
        return Err(Error::parse(first_line, format!("trailing tokens after group spec: {:?}", &tokens[pos..])));
    }
    Ok(spec)
}

/// Parses the compact command-line form, e.g. `elemab:2,3`, `cyclic:4`,
/// `symmetric:3` or a product `cyclic:4*cyclic:2`.
pub fn parse_group_flag(flag: &str) -> Result<GroupSpec> {
    let mut factors = flag.split('*').map(|f| {
        let text = f.trim().replace([':', ','], " ");
        parse_group_spec(&text)
    });
    let mut spec = factors.next().ok_or_else(|| Error::parse(0, "empty group flag"))??;
    for f in factors {
        spec = GroupSpec::Product(Box::new(spec), Box::new(f?));
    }
    Ok(spec)
}

fn parse_tokens(tokens: &[&str], pos: &mut usize) -> std::result::Result<GroupSpec, String> {
    let mut next = || -> std::result::Result<&str, String> {
        let t = tokens.get(*pos).copied().ok_or("unexpected end of group spec")?;
        *pos += 1;
        Ok(t)
    };
    let kw = next()?;
    let mut num = |what: &str| -> std::result::Result<usize, String> {
        let t = tokens.get(*pos).copied().ok_or(format!("missing {what}"))?;
        *pos += 1;
        t.parse().map_err(|_| format!("bad {what} `{t}`"))
    };
    match kw {
        "cyclic" => Ok(GroupSpec::Cyclic(num("order")?)),
        "elemab" => {
            let p = num("prime")?;
            let n = num("rank")?;
            Ok(GroupSpec::ElementaryAbelian { p, n })
        }
        "symmetric" => Ok(GroupSpec::Symmetric(num("degree")?)),
        "dihedral" => Ok(GroupSpec::Dihedral(num("n")?)),
        "product" => {
            let a = parse_tokens(tokens, pos)?;
            let b = parse_tokens(tokens, pos)?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        }
        other => Err(format!("unknown group keyword `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_orbit_stabilizer(g: &FiniteGroup) {
        let classes = g.conjugacy_classes();
        let mut total = 0;
        for class in &classes.classes {
            for &x in class {
                assert_eq!(class.len() * g.centralizer(x).order(), g.order());
                assert!(g.subgroup_generated(&[x]).is_subset_of(&g.centralizer(x)));
            }
            total += class.len();
        }
        assert_eq!(total, g.order());
    }

    #[test]
    fn elementary_abelian_2_3() {
        let g = FiniteGroup::elementary_abelian(2, 3);
        assert_eq!(g.order(), 8);
        assert!(g.elements().all(|x| g.inv(x) == x));
        assert_eq!(g.conjugacy_classes().len(), 8);
        assert_eq!(g.centralizer(5).order(), 8);
    }

    #[test]
    fn cyclic_4() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.element_order(1), 4);
        assert_eq!(g.conjugacy_classes().len(), 4);
        assert_eq!(g.subgroup_generated(&[1]).order(), 4);
    }

    #[test]
    fn symmetric_3_structure() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let involutions = s3.elements().filter(|&x| x != 0 && s3.inv(x) == x).count();
        assert_eq!(involutions, 3);
        let sizes: Vec<usize> = s3.conjugacy_classes().classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let t = s3.elements().find(|&x| x != 0 && s3.inv(x) == x).unwrap();
        assert_eq!(s3.centralizer(t).order(), 2);
        let ts: Vec<usize> = s3.elements().filter(|&x| x != 0 && s3.inv(x) == x).collect();
        assert_eq!(s3.subgroup_generated(&ts[..2]).order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn empty_generators_give_trivial_subgroup() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.subgroup_generated(&[]).members, vec![0]);
    }

    #[test]
    fn orbit_stabilizer_for_every_constructor() {
        let groups = [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(6),
            FiniteGroup::elementary_abelian(2, 3),
            FiniteGroup::elementary_abelian(3, 2),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)),
        ];
        for g in &groups {
            check_orbit_stabilizer(g);
        }
    }

    #[test]
    fn dihedral_4_has_five_classes() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.conjugacy_classes().len(), 5);
    }

    #[test]
    fn table_is_normalised_and_validated() {
        // Z/2 with the identity written second
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None, 64).unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.label(0), "1");

        let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        match FiniteGroup::from_table(bad, None, 64) {
            Err(Error::Validation { .. }) => {}
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_reports_triple() {
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(t, None, 64) {
            Err(Error::Validation { what, witness }) => {
                assert!(what.contains("associative"));
                assert_eq!(witness.len(), 3);
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn cap_is_enforced() {
        let spec = parse_group_flag("elemab:2,7").unwrap();
        assert!(matches!(spec.build(64), Err(Error::CapExceeded { .. })));
        assert_eq!(spec.build(128).unwrap().order(), 128);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_group_spec("cyclic 4").unwrap(), GroupSpec::Cyclic(4));
        let p = parse_group_spec("product cyclic 4\ncyclic 2").unwrap();
        assert_eq!(p.build(64).unwrap().order(), 8);
        let t = parse_group_spec("order 2\n0 1\n1 0\n").unwrap();
        assert_eq!(t.build(64).unwrap().order(), 2);
        assert!(parse_group_spec("order 2\n0 1\n").is_err());
        assert!(parse_group_spec("klein").is_err());
        let f = parse_group_flag("cyclic:4*cyclic:2").unwrap();
        assert!(f.build(64).unwrap().is_abelian());
        assert_eq!(parse_group_flag("elemab:2,2").unwrap().build(64).unwrap().order(), 4);
    }

    #[test]
    fn isomorphism_checks() {
        let z4z2 = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2));
        let z2z4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        assert!(z4z2.is_isomorphic(&z2z4));
        assert!(!z4z2.is_isomorphic(&FiniteGroup::dihedral(4).unwrap()));
        assert!(!FiniteGroup::cyclic(6).is_isomorphic(&FiniteGroup::symmetric(3).unwrap()));
        assert!(FiniteGroup::cyclic(6)
            .is_isomorphic(&FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3))));
    }

    #[test]
    fn homs_and_subgroups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.homs_to_cyclic(2).len(), 2);
        assert_eq!(s3.homs_to_cyclic(3).len(), 1);
        assert_eq!(s3.all_subgroups().len(), 6);
        assert_eq!(FiniteGroup::elementary_abelian(2, 3).all_subgroups().len(), 16);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().all_subgroups().len(), 30);
    }
}
