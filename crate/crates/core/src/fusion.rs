//! Twisted equivariant bundles over a finite group acting on itself by
//! conjugation, and the twisted Pontryagin product.
//!
//! A bundle assigns a space `V_g` to each element and to every pair
//! `(g, u)` a matrix `M_{g,u}` from `V_g` to `V_{u^-1 g u}` (rows index
//! `V_g`). The twisted composition rule is
//!
//! `M_{g,u1} M_{g1,u2} = exp(2 pi i tau(g; u1, u2)) M_{g,u1 u2}`,  `g1 = u1^-1 g u1`,
//!
//! where `tau` is the transgression of the context cocycle.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num::BigInt;
use rayon::prelude::*;

use crate::angle::Angle;
use crate::cochain::{cocycle_witness, delta, pullback, Cochain};
use crate::cyclotomic::{self, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupoid::{evaluation_hom, point_groupoid, Evaluation, FiniteGroupoid, SectorGroupoid};
use crate::matrix::Matrix;
use crate::solve::{coboundary_solve, is_normalized, normalize_cochain};
use crate::transgression::{mu, mu_at, theta, theta_at};
use crate::twisted::{projective_irreps, twisted_rank, ProjectiveRep, TwoCocycleGroup};

/// Sign of the `mu` phase in the star product. With the composition rule
/// above, the identity `e1*tau + e2*tau - e12*tau = -delta mu` forces it.
pub const MU_SIGN: i64 = 1;

/// A finite group with a normalised 3-cocycle and its transgressed data.
#[derive(Debug, Clone)]
pub struct TwistContext {
    group: FiniteGroup,
    base: FiniteGroupoid,
    inertia: SectorGroupoid,
    two: SectorGroupoid,
    phi: Cochain,
    tau: Cochain,
    mu: Cochain,
    tau_table: Vec<Angle>,
    mu_table: Vec<Angle>,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    id: u64,
}

impl TwistContext {
    /// Builds the context for a 3-cocycle `phi` on `[*/G]`, first shifting
    /// it by a coboundary to its normalised form if needed, and checks
    /// that `tau = theta(phi)` is a cocycle with
    /// `e1*tau + e2*tau - e12*tau + delta mu(phi) = 0` exactly.
    pub fn new(group: &FiniteGroup, phi: &Cochain) -> Result<Self> {
        let base = point_groupoid(group);
        if phi.degree() != 3 {
            return Err(Error::usage("the twisting cocycle must have degree 3"));
        }
        if let Some(w) = cocycle_witness(&base, phi) {
            return Err(Error::validation("twisting cochain is not a cocycle", w));
        }
        let phi = if is_normalized(&base, phi) { phi.clone() } else { normalize_cochain(&base, phi)?.0 };
        let inertia = SectorGroupoid::new(&base, 1)?;
        let two = SectorGroupoid::new(&base, 2)?;
        let tau = theta(&base, &inertia, &phi)?;
        let mu_c = mu(&base, &two, &phi)?;
        let n = group.order();
        let tau_table: Vec<Angle> =
            (0..n * n * n).into_par_iter().map(|i| theta_at(&base, &phi, i / (n * n), &[i / n % n, i % n])).collect();
        let mu_table: Vec<Angle> =
            (0..n * n * n).into_par_iter().map(|i| mu_at(&base, &phi, i / (n * n), i / n % n, &[i % n])).collect();
        let pairs: Vec<(usize, usize)> =
            group.elements().flat_map(|g| group.elements().filter(move |&u| group.commute(g, u)).map(move |u| (g, u))).collect();
        let pair_index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut h = DefaultHasher::new();
        group.table().hash(&mut h);
        phi.entries().hash(&mut h);
        let ctx = TwistContext {
            group: group.clone(),
            base,
            inertia,
            two,
            phi,
            tau,
            mu: mu_c,
            tau_table,
            mu_table,
            pairs,
            pair_index,
            id: h.finish(),
        };
        ctx.check_invariants()?;
        Ok(ctx)
    }

    pub fn untwisted(group: &FiniteGroup) -> Self {
        Self::new(group, &Cochain::zero(&point_groupoid(group), 3)).expect("zero is a cocycle")
    }

    fn check_invariants(&self) -> Result<()> {
        let ig = self.inertia.groupoid();
        if let Some(w) = cocycle_witness(ig, &self.tau) {
            return Err(Error::validation("transgressed cocycle is not closed", w));
        }
        let tg = self.two.groupoid();
        let sum = {
            let pull = |which| -> Result<Cochain> {
                let h = evaluation_hom(which, &self.base, &self.two, &self.inertia)?;
                Ok(pullback(&h, tg, &self.tau))
            };
            &(&pull(Evaluation::First)? + &pull(Evaluation::Second)?) - &pull(Evaluation::Product)?
        };
        let diff = &sum + &delta(tg, &self.mu);
        if let Some((w, _)) = diff.first_nonzero() {
            return Err(Error::validation("multiplicative identity fails", w));
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn inertia(&self) -> &SectorGroupoid {
        &self.inertia
    }

    pub fn two_sectors(&self) -> &SectorGroupoid {
        &self.two
    }

    /// The normalised twisting cocycle.
    pub fn phi(&self) -> &Cochain {
        &self.phi
    }

    pub fn tau(&self) -> &Cochain {
        &self.tau
    }

    pub fn mu(&self) -> &Cochain {
        &self.mu
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// `tau(g; u1, u2)`.
    #[inline]
    pub fn tau_at(&self, g: usize, u1: usize, u2: usize) -> Angle {
        let n = self.group.order();
        self.tau_table[(g * n + u1) * n + u2]
    }

    /// `mu(phi)(g1, g2; u)`.
    #[inline]
    pub fn mu_at(&self, g1: usize, g2: usize, u: usize) -> Angle {
        let n = self.group.order();
        self.mu_table[(g1 * n + g2) * n + u]
    }

    /// Commuting pairs `(g, u)`, the points where characters are recorded.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The 2-cocycle `tau(g; ., .)` on the centralizer of `g`.
    pub fn sector_cocycle(&self, g: usize) -> (Subgroup, TwoCocycleGroup) {
        let z = self.group.centralizer(g);
        let zg = self.group.restrict(&z);
        let c = crate::cochain::group_cochain(&zg, 2, |t| self.tau_at(g, z.members[t[0]], z.members[t[1]]));
        let tc = TwoCocycleGroup::new(&zg, &c).expect("sector restriction of a cocycle");
        (z, tc)
    }

    /// Whether the sector of `g` carries a trivial class.
    pub fn sector_is_trivial(&self, g: usize) -> bool {
        let (_, tc) = self.sector_cocycle(g);
        let pt = point_groupoid(tc.group());
        coboundary_solve(&pt, &tc.to_cochain()).expect("cocycle").is_some()
    }
}

/// A twisted equivariant bundle over the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedBundle {
    context: u64,
    dims: Vec<usize>,
    action: Vec<Option<Matrix>>,
}

impl TwistedBundle {
    /// Tabulates `f(g, u)` for every `g` with `dims[g] > 0`.
    pub fn from_fn(ctx: &TwistContext, dims: Vec<usize>, f: impl Fn(usize, usize) -> Matrix) -> Self {
        let n = ctx.group.order();
        let mut action = vec![None; n * n];
        for g in 0..n {
            if dims[g] > 0 {
                for u in 0..n {
                    action[g * n + u] = Some(f(g, u));
                }
            }
        }
        TwistedBundle { context: ctx.id, dims, action }
    }

    pub fn zero(ctx: &TwistContext) -> Self {
        let n = ctx.group.order();
        TwistedBundle { context: ctx.id, dims: vec![0; n], action: vec![None; n * n] }
    }

    /// Trivial line over the identity element.
    pub fn unit(ctx: &TwistContext) -> Self {
        let mut dims = vec![0; ctx.group.order()];
        dims[0] = 1;
        Self::from_fn(ctx, dims, |_, _| Matrix::identity(1))
    }

    /// The twisted group algebra of the identity sector acting on itself.
    pub fn regular(ctx: &TwistContext) -> Self {
        let (_, tc) = ctx.sector_cocycle(0);
        let reg = crate::twisted::TwistedAlgebra::new(&tc).regular_representation();
        let mut dims = vec![0; ctx.group.order()];
        dims[0] = ctx.group.order();
        Self::from_fn(ctx, dims, |_, u| reg.matrices[u].clone())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, g: usize) -> usize {
        self.dims[g]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn matrix(&self, g: usize, u: usize) -> Option<&Matrix> {
        self.action[g * self.dims.len() + u].as_ref()
    }

    /// Replaces one action matrix; used to build controls.
    pub fn set_matrix(&mut self, g: usize, u: usize, m: Matrix) {
        let n = self.dims.len();
        self.action[g * n + u] = Some(m);
    }
}

/// Direct sum of bundles over the same context.
pub fn direct_sum(ctx: &TwistContext, a: &TwistedBundle, b: &TwistedBundle) -> Result<TwistedBundle> {
    if a.context != ctx.id || b.context != ctx.id {
        return Err(Error::usage("bundle belongs to a different context"));
    }
    let grp = &ctx.group;
    let dims: Vec<usize> = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
    Ok(TwistedBundle::from_fn(ctx, dims.clone(), |g, u| {
        let h = grp.conj(g, u);
        let mut m = Matrix::zeros(dims[g], dims[h]);
        if let Some(x) = a.matrix(g, u) {
            m.put_block(0, 0, x);
        }
        if let Some(y) = b.matrix(g, u) {
            m.put_block(a.dims[g], a.dims[h], y);
        }
        m
    }))
}

/// Checks shapes, class-constant dimensions, identities and the twisted
/// composition rule. The witness is `[g, u1, u2]` for a failing
/// composition, `[g, 0, 0]` for a non-identity `M_{g,1}`, and `[g, h]`
/// for mismatched dimensions on a class.
pub fn validate_bundle(ctx: &TwistContext, v: &TwistedBundle) -> Result<()> {
    if v.context != ctx.id {
        return Err(Error::usage("bundle belongs to a different context"));
    }
    let grp = &ctx.group;
    for g in grp.elements() {
        for u in grp.elements() {
            let h = grp.conj(g, u);
            if v.dims[g] != v.dims[h] {
                return Err(Error::validation("dimension varies along a conjugacy class", vec![g, h]));
            }
            if v.dims[g] > 0 {
                let m = v.matrix(g, u).ok_or_else(|| Error::validation("missing action matrix", vec![g, u]))?;
                if m.rows() != v.dims[g] || m.cols() != v.dims[h] {
                    return Err(Error::validation("action matrix has the wrong shape", vec![g, u]));
                }
            }
        }
    }
    let bad = grp.elements().filter(|&g| v.dims[g] > 0).find_map(|g| {
        if v.matrix(g, 0) != Some(&Matrix::identity(v.dims[g])) {
            return Some(vec![g, 0, 0]);
        }
        for u1 in grp.elements() {
            let g1 = grp.conj(g, u1);
            let m1 = v.matrix(g, u1).unwrap();
            for u2 in grp.elements() {
                let lhs = m1.mul(v.matrix(g1, u2).unwrap());
                let rhs = v.matrix(g, grp.mul(u1, u2)).unwrap().scale(&Cyclotomic::phase(ctx.tau_at(g, u1, u2)));
                if lhs != rhs {
                    return Some(vec![g, u1, u2]);
                }
            }
        }
        None
    });
    match bad {
        Some(w) => Err(Error::validation("twisted composition rule fails", w)),
        None => Ok(()),
    }
}

/// The twisted Pontryagin product. The fibre over `g` is the direct sum of
/// `V_{g1} (x) W_{g2}` over `g1 g2 = g`, ordered by `g1`; `u` carries the
/// summand `(g1, g2)` to `(u^-1 g1 u, u^-1 g2 u)` by the Kronecker product
/// of the two actions, times `exp(-2 pi i mu(phi)(g1, g2; u))`.
pub fn star(ctx: &TwistContext, v: &TwistedBundle, w: &TwistedBundle) -> Result<TwistedBundle> {
    if v.context != ctx.id || w.context != ctx.id {
        return Err(Error::usage("bundle belongs to a different context"));
    }
    let grp = &ctx.group;
    let n = grp.order();
    // summands of each fibre with their row offsets
    let mut layout: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    let mut dims = vec![0usize; n];
    for g1 in grp.elements() {
        if v.dims[g1] == 0 {
            continue;
        }
        for g2 in grp.elements() {
            if w.dims[g2] == 0 {
                continue;
            }
            let g = grp.mul(g1, g2);
            layout[g].push((g1, g2, dims[g]));
            dims[g] += v.dims[g1] * w.dims[g2];
        }
    }
    let offset: HashMap<(usize, usize), usize> =
        layout.iter().flatten().map(|&(g1, g2, off)| ((g1, g2), off)).collect();
    let sign = MU_SIGN;
    Ok(TwistedBundle::from_fn(ctx, dims.clone(), |g, u| {
        let h = grp.conj(g, u);
        let mut m = Matrix::zeros(dims[g], dims[h]);
        for &(g1, g2, row) in &layout[g] {
            let (h1, h2) = (grp.conj(g1, u), grp.conj(g2, u));
            let col = offset[&(h1, h2)];
            let block = v.matrix(g1, u).unwrap().kron(w.matrix(g2, u).unwrap());
            let phase = Cyclotomic::phase(ctx.mu_at(g1, g2, u).times(sign));
            m.put_block(row, col, &block.scale(&phase));
        }
        m
    }))
}

/// Character values of a twisted class at every commuting pair `(g, u)`,
/// in the order of [`TwistContext::pairs`]. Integer combinations model
/// virtual classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    context: u64,
    values: Vec<Cyclotomic>,
}

impl KClass {
    pub fn zero(ctx: &TwistContext) -> Self {
        KClass { context: ctx.id, values: vec![Cyclotomic::zero(); ctx.pairs.len()] }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, ctx: &TwistContext, g: usize, u: usize) -> Option<&Cyclotomic> {
        ctx.pair_index.get(&(g, u)).map(|&i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn add(&self, other: &KClass) -> KClass {
        assert_eq!(self.context, other.context, "classes from different contexts");
        KClass { context: self.context, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        self.add(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> KClass {
        let c = Cyclotomic::from_int(k);
        KClass { context: self.context, values: self.values.iter().map(|a| a * &c).collect() }
    }
}

/// `chi(g, u) = trace M_{g,u}` at every commuting pair.
pub fn character(ctx: &TwistContext, v: &TwistedBundle) -> KClass {
    let values = ctx
        .pairs
        .iter()
        .map(|&(g, u)| v.matrix(g, u).map_or_else(Cyclotomic::zero, Matrix::trace))
        .collect();
    KClass { context: ctx.id, values }
}

/// The product on characters induced by [`star`]: only summands fixed by
/// `u` contribute to the trace.
pub fn star_classes(ctx: &TwistContext, a: &KClass, b: &KClass) -> KClass {
    let grp = &ctx.group;
    let values = ctx
        .pairs
        .iter()
        .map(|&(g, u)| {
            grp.elements()
                .filter_map(|g1| {
                    let g2 = grp.mul(grp.inv(g1), g);
                    if !grp.commute(g1, u) || !grp.commute(g2, u) {
                        return None;
                    }
                    let x = a.value(ctx, g1, u).unwrap();
                    let y = b.value(ctx, g2, u).unwrap();
                    if x.is_zero() || y.is_zero() {
                        return None;
                    }
                    Some(&(x * y) * &Cyclotomic::phase(ctx.mu_at(g1, g2, u).times(MU_SIGN)))
                })
                .sum()
        })
        .collect();
    KClass { context: ctx.id, values }
}

/// An irreducible twisted bundle supported on one conjugacy class.
#[derive(Debug, Clone)]
pub struct BasisElement {
    /// class representative
    pub sector: usize,
    /// index among the irreducibles of that sector
    pub index: usize,
    pub bundle: TwistedBundle,
    pub character: KClass,
}

impl BasisElement {
    pub fn label(&self, ctx: &TwistContext) -> String {
        format!("[{}]#{} (dim {})", ctx.group.label(self.sector), self.index, self.bundle.dim(self.sector))
    }
}

/// Spreads a projective representation of the centralizer of `g` over
/// the conjugacy class of `g`. Each `h` in the class gets the minimal `x_h`
/// with `x_h^-1 g x_h = h`, the arrow `(h, u)` acts through
/// `F(h, u) = x_h u x_{h'}^-1` in the centralizer, and a 1-cochain `kappa`
/// on the orbit absorbs the difference between `tau` and `F^* tau_g`.
pub fn extend_from_centralizer(
    ctx: &TwistContext,
    g: usize,
    z: &Subgroup,
    rep: &ProjectiveRep,
) -> Result<TwistedBundle> {
    let grp = &ctx.group;
    let n = grp.order();
    let mut x = vec![usize::MAX; n];
    for u in grp.elements() {
        let h = grp.conj(g, u);
        if x[h] == usize::MAX {
            x[h] = u;
        }
    }
    let class: Vec<usize> = grp.elements().filter(|&h| x[h] != usize::MAX).collect();
    let zpos: HashMap<usize, usize> = z.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let f = |h: usize, u: usize| {
        let h2 = grp.conj(h, u);
        grp.mul(grp.mul(x[h], u), grp.inv(x[h2]))
    };

    // kappa on the orbit, as a cochain on the full subgroupoid
    let objects: Vec<usize> = class.iter().map(|&h| ctx.inertia.object_of(&[h]).unwrap()).collect();
    let mut sorted = objects.clone();
    sorted.sort_unstable();
    let (orbit, arrows) = ctx.inertia.groupoid().full_subgroupoid(&sorted);
    let parts = |a: usize| {
        let (o, u) = ctx.inertia.arrow_parts(arrows[a]);
        (ctx.inertia.loop_at(o, 0), u)
    };
    let target = Cochain::from_fn(&orbit, 2, |t| {
        let (h, u1) = parts(t[0]);
        let (h1, u2) = parts(t[1]);
        ctx.tau_at(h, u1, u2) - ctx.tau_at(g, f(h, u1), f(h1, u2))
    });
    let kappa = coboundary_solve(&orbit, &target)?
        .ok_or_else(|| Error::validation("sector cocycle does not extend over the class", vec![g]))?;
    let mut kappa_of: HashMap<(usize, usize), Angle> = HashMap::new();
    for a in 0..orbit.arrow_count() {
        kappa_of.insert(parts(a), kappa.get(&[a]));
    }

    let d = rep.dim();
    let mut dims = vec![0; n];
    for &h in &class {
        dims[h] = d;
    }
    Ok(TwistedBundle::from_fn(ctx, dims, |h, u| {
        rep.matrices[zpos[&f(h, u)]].scale(&Cyclotomic::phase(kappa_of[&(h, u)]))
    }))
}

/// Irreducible twisted bundles, one per (conjugacy class, irreducible
/// projective representation of its centralizer), ordered by class
/// representative.
pub fn basis(ctx: &TwistContext) -> Result<Vec<BasisElement>> {
    let reps: Vec<usize> = ctx.group.conjugacy_classes().representatives().collect();
    let per_sector: Vec<Result<Vec<BasisElement>>> = reps
        .par_iter()
        .map(|&g| {
            let (z, tc) = ctx.sector_cocycle(g);
            let irreps = projective_irreps(&tc)?;
            irreps
                .iter()
                .enumerate()
                .map(|(index, rep)| {
                    let bundle = extend_from_centralizer(ctx, g, &z, rep)?;
                    let character = character(ctx, &bundle);
                    Ok(BasisElement { sector: g, index, bundle, character })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for s in per_sector {
        out.extend(s?);
    }
    Ok(out)
}

/// Number of irreducibles in the sector of `g`, from the twisted rank.
pub fn sector_rank(ctx: &TwistContext, g: usize) -> Result<usize> {
    twisted_rank(&ctx.sector_cocycle(g).1)
}

/// Expresses characters in a fixed basis of characters, using a square
/// invertible minor chosen once.
pub struct CharacterSolver {
    basis: Vec<KClass>,
    rows: Vec<usize>,
    inverse: Matrix,
}

impl CharacterSolver {
    pub fn new(basis: &[KClass]) -> Result<Self> {
        let b = basis.len();
        let m = basis.first().map_or(0, |k| k.values.len());
        let mut rows: Vec<usize> = Vec::new();
        let row_of = |r: usize| -> Vec<Cyclotomic> { basis.iter().map(|k| k.values[r].clone()).collect() };
        let mut chosen: Vec<Vec<Cyclotomic>> = Vec::new();
        for r in 0..m {
            if rows.len() == b {
                break;
            }
            chosen.push(row_of(r));
            if cyclotomic::rank(&chosen) == chosen.len() {
                rows.push(r);
            } else {
                chosen.pop();
            }
        }
        if rows.len() != b {
            return Err(Error::usage("basis characters are linearly dependent"));
        }
        let mut inverse = Matrix::zeros(b, b);
        for j in 0..b {
            let e: Vec<Cyclotomic> = (0..b).map(|i| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }).collect();
            let col = cyclotomic::solve(&chosen, &e).expect("invertible minor");
            for (i, v) in col.into_iter().enumerate() {
                inverse.set(i, j, v);
            }
        }
        Ok(CharacterSolver { basis: basis.to_vec(), rows, inverse })
    }

    /// Integer coordinates of `chi`, or an error carrying the residual.
    pub fn expand(&self, chi: &KClass) -> Result<Vec<i64>> {
        let b = self.basis.len();
        let coef: Vec<Cyclotomic> = (0..b)
            .map(|i| (0..b).map(|j| self.inverse.get(i, j) * &chi.values[self.rows[j]]).sum())
            .collect();
        let mut rebuilt = KClass { context: chi.context, values: vec![Cyclotomic::zero(); chi.values.len()] };
        for (c, k) in coef.iter().zip(&self.basis) {
            if !c.is_zero() {
                rebuilt = rebuilt.add(&KClass { context: k.context, values: k.values.iter().map(|v| v * c).collect() });
            }
        }
        let residual = chi.sub(&rebuilt);
        if !residual.is_zero() {
            let first = residual.values.iter().position(|v| !v.is_zero()).unwrap();
            return Err(Error::NotInSpan(format!("residual {} at pair index {first}", residual.values[first])));
        }
        coef.iter()
            .map(|c| {
                c.to_integer()
                    .and_then(|z| i64::try_from(z).ok())
                    .ok_or_else(|| Error::NotInSpan(format!("non-integral coefficient {c}")))
            })
            .collect()
    }
}

/// `N[a][b][c]`: multiplicity of basis element `c` in `basis[a] * basis[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub constants: Vec<Vec<Vec<i64>>>,
}

impl StructureTable {
    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }

    /// First `(a, b)` with `N[a][b] != N[b][a]`.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.constants[a][b] != self.constants[b][a])
    }

    /// First `(a, b, c)` where the two bracketings of the table disagree.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        let t = &self.constants;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left: Vec<i64> =
                        (0..n).map(|e| (0..n).map(|d| t[a][b][d] * t[d][c][e]).sum()).collect();
                    let right: Vec<i64> =
                        (0..n).map(|e| (0..n).map(|d| t[b][c][d] * t[a][d][e]).sum()).collect();
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Structure constants of the star product in the given basis, computed
/// from bundle-level products.
pub fn structure_constants(ctx: &TwistContext, basis: &[TwistedBundle]) -> Result<StructureTable> {
    let chars: Vec<KClass> = basis.iter().map(|b| character(ctx, b)).collect();
    let solver = CharacterSolver::new(&chars)?;
    let n = basis.len();
    let flat: Vec<Result<Vec<i64>>> = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let p = star(ctx, &basis[i / n], &basis[i % n])?;
            solver.expand(&character(ctx, &p))
        })
        .collect();
    let mut constants = vec![Vec::with_capacity(n); n];
    for (i, r) in flat.into_iter().enumerate() {
        constants[i / n].push(r?);
    }
    Ok(StructureTable { constants })
}

/// Integer value of a character entry, for reports.
pub fn integer_value(c: &Cyclotomic) -> Option<BigInt> {
    c.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{poly_to_cocycle, Poly2Class};

    fn alpha_context() -> TwistContext {
        let g = FiniteGroup::elementary_abelian(2, 3);
        let phi = poly_to_cocycle(&Poly2Class::parse("xyz", 3).unwrap(), &g).unwrap();
        TwistContext::new(&g, &phi).unwrap()
    }

    #[test]
    fn untwisted_context_is_zero() {
        let ctx = TwistContext::untwisted(&FiniteGroup::symmetric(3).unwrap());
        assert!(ctx.tau().is_zero());
        assert!(ctx.mu().is_zero());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        use rand::SeedableRng;
        let g = FiniteGroup::cyclic(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let phi = Cochain::random(&point_groupoid(&g), 3, 9, &mut rng);
        assert!(matches!(TwistContext::new(&g, &phi), Err(Error::Validation { .. })));
    }

    #[test]
    fn unit_and_regular_bundles_validate() {
        let ctx = alpha_context();
        validate_bundle(&ctx, &TwistedBundle::unit(&ctx)).unwrap();
        let reg = TwistedBundle::regular(&ctx);
        validate_bundle(&ctx, &reg).unwrap();
        let chi = character(&ctx, &reg);
        assert_eq!(chi.value(&ctx, 0, 0), Some(&Cyclotomic::from_int(8)));
        assert!((1..8).all(|u| chi.value(&ctx, 0, u).unwrap().is_zero()));
    }

    #[test]
    fn wrong_phase_is_reported() {
        let ctx = alpha_context();
        let b = basis(&ctx).unwrap();
        let mut v = b.iter().find(|e| e.sector == 1).unwrap().bundle.clone();
        let m = v.matrix(1, 2).unwrap().scale(&Cyclotomic::from_int(-1));
        v.set_matrix(1, 2, m);
        match validate_bundle(&ctx, &v) {
            Err(Error::Validation { witness, .. }) => assert_eq!(witness[0], 1),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn twisted_sectors_have_rank_two() {
        let ctx = alpha_context();
        let b = basis(&ctx).unwrap();
        assert_eq!(b.len(), 22);
        for g in 1..8 {
            assert_eq!(sector_rank(&ctx, g).unwrap(), 2);
            assert!(!ctx.sector_is_trivial(g));
        }
        for e in &b {
            validate_bundle(&ctx, &e.bundle).unwrap();
        }
    }

    #[test]
    fn star_of_twisted_irreducibles() {
        let ctx = alpha_context();
        let b = basis(&ctx).unwrap();
        let x = b.iter().find(|e| e.sector == 1).unwrap();
        let y = b.iter().find(|e| e.sector == 2).unwrap();
        let p = star(&ctx, &x.bundle, &y.bundle).unwrap();
        validate_bundle(&ctx, &p).unwrap();
        assert_eq!(p.dim(3), 4);
        assert_eq!(p.total_dim(), 4);
        assert_eq!(character(&ctx, &p), star_classes(&ctx, &x.character, &y.character));
    }

    #[test]
    fn unit_is_neutral() {
        let ctx = alpha_context();
        let unit = TwistedBundle::unit(&ctx);
        for e in basis(&ctx).unwrap() {
            assert_eq!(star(&ctx, &unit, &e.bundle).unwrap(), e.bundle);
            assert_eq!(star(&ctx, &e.bundle, &unit).unwrap(), e.bundle);
        }
    }

    #[test]
    fn direct_sum_adds_characters() {
        let ctx = TwistContext::untwisted(&FiniteGroup::symmetric(3).unwrap());
        let b = basis(&ctx).unwrap();
        assert_eq!(b.len(), 8);
        let s = direct_sum(&ctx, &b[0].bundle, &b[4].bundle).unwrap();
        validate_bundle(&ctx, &s).unwrap();
        assert_eq!(character(&ctx, &s), b[0].character.add(&b[4].character));
    }

    #[test]
    fn untwisted_z2_table() {
        let ctx = TwistContext::untwisted(&FiniteGroup::cyclic(2));
        let b = basis(&ctx).unwrap();
        let bundles: Vec<TwistedBundle> = b.iter().map(|e| e.bundle.clone()).collect();
        let t = structure_constants(&ctx, &bundles).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.commutativity_witness().is_none());
        assert!(t.associativity_witness().is_none());
        // every product of two basis elements is again a basis element
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(t.constants[a][c].iter().sum::<i64>(), 1);
            }
        }
    }
}
