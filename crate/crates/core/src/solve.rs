//! Exact solution of integer linear systems with right-hand sides in Q/Z.
//!
//! Q/Z is divisible, so once the integer matrix is brought to echelon form
//! by unimodular row operations every pivot equation can be solved; the
//! system is consistent exactly when the zero rows see a zero right-hand
//! side.

use std::collections::HashMap;

use crate::angle::Angle;
use crate::cochain::{is_cocycle, Cochain};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

fn checked(x: Option<i64>) -> i64 {
    x.expect("integer overflow during elimination")
}

/// Finds `y` with `matrix * y = rhs` over Q/Z, if one exists. Free
/// variables are set to zero, so the answer is deterministic.
pub fn solve_qz(mut matrix: Vec<Vec<i64>>, mut rhs: Vec<Angle>) -> Option<Vec<Angle>> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "matrix and right-hand side disagree");
    let cols = matrix.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        loop {
            let best = (top..rows)
                .filter(|&r| matrix[r][col] != 0)
                .min_by_key(|&r| (matrix[r][col].unsigned_abs(), r));
            let Some(p) = best else { break };
            matrix.swap(top, p);
            rhs.swap(top, p);
            let mut clean = true;
            for r in top + 1..rows {
                let v = matrix[r][col];
                if v == 0 {
                    continue;
                }
                let q = v / matrix[top][col];
                if q != 0 {
                    let (head, tail) = matrix.split_at_mut(r);
                    let prow = &head[top];
                    for (x, &y) in tail[0].iter_mut().zip(prow).skip(col) {
                        *x = checked(x.checked_sub(checked(q.checked_mul(y))));
                    }
                    rhs[r] = rhs[r] - rhs[top].times(q);
                }
                if matrix[r][col] != 0 {
                    clean = false;
                }
            }
            if clean {
                pivots.push((top, col));
                top += 1;
                break;
            }
        }
    }
    if rhs[top..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut y = vec![Angle::ZERO; cols];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = rhs[r];
        for j in c + 1..cols {
            if matrix[r][j] != 0 && !y[j].is_zero() {
                acc -= y[j].times(matrix[r][j]);
            }
        }
        y[c] = acc.div_int(matrix[r][c] as i128);
    }
    Some(y)
}

/// Rows of the coboundary map from degree `k - 1` to degree `k`, one row
/// per tuple in `rows`, with columns indexed by `columns`.
fn delta_rows(g: &FiniteGroupoid, k: usize, rows: &[Vec<usize>]) -> (Vec<Vec<i64>>, Vec<Vec<usize>>) {
    let columns: Vec<Vec<usize>> = g.nerve(k - 1).collect();
    let index: HashMap<&[usize], usize> = columns.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut matrix = vec![vec![0i64; columns.len()]; rows.len()];
    for (r, t) in rows.iter().enumerate() {
        let row = &mut matrix[r];
        if k == 1 {
            row[index[[g.target(t[0])].as_slice()]] += 1;
            row[index[[g.source(t[0])].as_slice()]] -= 1;
            continue;
        }
        row[index[&t[1..]]] += 1;
        for i in 1..k {
            let mut face = t[..i - 1].to_vec();
            face.push(g.compose(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            row[index[face.as_slice()]] += if i % 2 == 0 { 1 } else { -1 };
        }
        row[index[&t[..k - 1]]] += if k % 2 == 0 { 1 } else { -1 };
    }
    (matrix, columns)
}

/// Solves `delta b = c` restricted to the tuples in `rows`.
pub fn solve_delta_on(g: &FiniteGroupoid, c: &Cochain, rows: &[Vec<usize>]) -> Result<Option<Cochain>> {
    let k = c.degree();
    if k == 0 {
        return Err(Error::usage("degree-0 cochains have no coboundary preimages"));
    }
    let (matrix, columns) = delta_rows(g, k, rows);
    let rhs = rows.iter().map(|t| c.get(t)).collect();
    Ok(solve_qz(matrix, rhs).map(|y| {
        let mut b = Cochain::zero(g, k - 1);
        for (t, v) in columns.iter().zip(y) {
            b.set(t, v);
        }
        b
    }))
}

/// `Some(b)` with `delta b = c` exactly, or `None` when the cocycle `c`
/// represents a nonzero class.
pub fn coboundary_solve(g: &FiniteGroupoid, c: &Cochain) -> Result<Option<Cochain>> {
    if !is_cocycle(g, c) {
        return Err(Error::usage("coboundary_solve needs a cocycle"));
    }
    if c.degree() == 0 {
        return Ok(c.is_zero().then(|| Cochain::zero(g, 0)));
    }
    let rows: Vec<Vec<usize>> = g.nerve(c.degree()).collect();
    solve_delta_on(g, c, &rows)
}

pub fn is_degenerate(g: &FiniteGroupoid, tuple: &[usize]) -> bool {
    tuple.iter().any(|&a| g.identity(g.source(a)) == a)
}

/// Shifts a cocycle of positive degree by a coboundary so that it
/// vanishes on every tuple containing an identity arrow. Returns the
/// normalised cocycle and the cochain `b` with `c - delta b` normalised.
pub fn normalize_cochain(g: &FiniteGroupoid, c: &Cochain) -> Result<(Cochain, Cochain)> {
    let k = c.degree();
    if k == 0 {
        return Ok((c.clone(), Cochain::zero(g, 0)));
    }
    if let Some(w) = crate::cochain::cocycle_witness(g, c) {
        return Err(Error::validation("cochain is not a cocycle", w));
    }
    let rows: Vec<Vec<usize>> = g.nerve(k).filter(|t| is_degenerate(g, t)).collect();
    let b = solve_delta_on(g, c, &rows)?.expect("degenerate part of a cocycle is always a coboundary");
    let shifted = c - &crate::cochain::delta(g, &b);
    Ok((shifted, b))
}

pub fn is_normalized(g: &FiniteGroupoid, c: &Cochain) -> bool {
    c.entries().iter().all(|(t, _)| c.degree() == 0 || !is_degenerate(g, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::delta;
    use crate::group::FiniteGroup;
    use crate::groupoid::{point_groupoid, SectorGroupoid};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solves_simple_system() {
        // 2y = 1/2 over Q/Z has solution 1/4
        let y = solve_qz(vec![vec![2]], vec![Angle::HALF]).unwrap();
        assert_eq!(y[0].times(2), Angle::HALF);
        // 0y = 1/3 has none
        assert!(solve_qz(vec![vec![0]], vec![Angle::new(1, 3)]).is_none());
        // y1 - y2 = 1/5, y2 - y1 = 1/5 inconsistent
        assert!(solve_qz(vec![vec![1, -1], vec![-1, 1]], vec![Angle::new(1, 5); 2]).is_none());
    }

    #[test]
    fn zero_is_a_coboundary() {
        let pt = point_groupoid(&FiniteGroup::cyclic(4));
        let z = Cochain::zero(&pt, 2);
        assert!(coboundary_solve(&pt, &z).unwrap().unwrap().is_zero());
    }

    #[test]
    fn round_trip_random_coboundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s3 = point_groupoid(&FiniteGroup::symmetric(3).unwrap());
        let inertia = SectorGroupoid::new(&s3, 1).unwrap();
        for g in [&s3, inertia.groupoid()] {
            for k in 0..3 {
                let b = Cochain::random(g, k, 12, &mut rng);
                let c = delta(g, &b);
                let w = coboundary_solve(g, &c).unwrap().expect("coboundary");
                assert_eq!(delta(g, &w), c);
            }
        }
    }

    #[test]
    fn generator_of_h2_of_z2_squared_is_not_a_coboundary() {
        // tau(a, b) = a_0 b_1 / 2 represents the nontrivial class
        let g = FiniteGroup::elementary_abelian(2, 2);
        let pt = point_groupoid(&g);
        let tau = crate::cochain::group_cochain(&g, 2, |t| {
            if t[0] & 1 == 1 && t[1] & 2 == 2 { Angle::HALF } else { Angle::ZERO }
        });
        assert!(is_cocycle(&pt, &tau));
        assert!(coboundary_solve(&pt, &tau).unwrap().is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(coboundary_solve(&pt, &Cochain::random(&pt, 2, 6, &mut rng)).is_err());
    }

    #[test]
    fn cyclic_three_cocycle_is_nontrivial() {
        let n = 4;
        let g = FiniteGroup::cyclic(n);
        let pt = point_groupoid(&g);
        let omega = crate::cochain::group_cochain(&g, 3, |t| {
            Angle::new((t[0] * ((t[1] + t[2]) / n)) as i64, n as i64)
        });
        assert!(is_cocycle(&pt, &omega));
        assert!(coboundary_solve(&pt, &omega).unwrap().is_none());
        assert!(coboundary_solve(&pt, &omega.scaled(4)).unwrap().is_some());
    }

    #[test]
    fn normalisation_kills_degenerate_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pt = point_groupoid(&FiniteGroup::dihedral(4).unwrap());
        let c = delta(&pt, &Cochain::random(&pt, 2, 10, &mut rng));
        assert!(!is_normalized(&pt, &c));
        let (n, b) = normalize_cochain(&pt, &c).unwrap();
        assert!(is_normalized(&pt, &n));
        assert_eq!(&n + &delta(&pt, &b), c);
    }
}
