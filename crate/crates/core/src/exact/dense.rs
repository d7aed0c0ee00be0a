//! Two-phase dense simplex over split free variables. Slow, but simple
//! enough to serve as a reference for the dictionary solver.

use num_traits::{One, Signed, Zero};

use super::simplex::Feasibility;
use super::{check_dims, LinearConstraint, Rational, Relation};
use crate::error::Result;

/// Reference solver used to cross-check [`super::feasible`].
pub(crate) fn feasible_dense(constraints: &[LinearConstraint], dim: usize) -> Result<Feasibility> {
    check_dims(constraints, dim)?;
    let mut live = Vec::with_capacity(constraints.len());
    for c in constraints {
        match c.trivial() {
            Some(true) => {}
            Some(false) => return Ok(Feasibility::Infeasible),
            None => live.push(c),
        }
    }
    if live.is_empty() {
        return Ok(Feasibility::Feasible(vec![Rational::zero(); dim]));
    }

    let has_strict = live.iter().any(|c| c.relation() == Relation::Gt);
    let t_col = 2 * dim;
    let n_struct = 2 * dim + usize::from(has_strict);
    let n_slack =
        live.iter().filter(|c| c.relation() != Relation::Eq).count() + usize::from(has_strict);

    // Rows over structural + slack columns; the basis column is chosen below.
    let mut rows: Vec<(Vec<Rational>, Rational, Option<usize>)> = Vec::new();
    let mut slack = n_struct;
    for c in &live {
        let mut row = vec![Rational::zero(); n_struct + n_slack];
        for (k, a) in c.coeffs().iter().enumerate() {
            row[2 * k] = a.clone();
            row[2 * k + 1] = -a.clone();
        }
        let mut slack_col = None;
        match c.relation() {
            Relation::Eq => {}
            Relation::Ge | Relation::Gt => {
                if c.relation() == Relation::Gt {
                    row[t_col] = -Rational::one();
                }
                row[slack] = -Rational::one();
                slack_col = Some(slack);
                slack += 1;
            }
        }
        rows.push((row, c.offset().clone(), slack_col));
    }
    if has_strict {
        let mut row = vec![Rational::zero(); n_struct + n_slack];
        row[t_col] = Rational::one();
        row[slack] = Rational::one();
        rows.push((row, Rational::one(), Some(slack)));
    }

    // Orient every row so its right-hand side is nonnegative, preferring a
    // +1 slack coefficient when the right-hand side is zero.
    for (row, b, s) in rows.iter_mut() {
        let flip = b.is_negative() || (b.is_zero() && s.is_some_and(|s| row[s].is_negative()));
        if flip {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
        }
        if s.is_some_and(|c| !row[c].is_one()) {
            *s = None;
        }
    }

    let n_art = rows.iter().filter(|(_, _, s)| s.is_none()).count();
    let ncols = n_struct + n_slack + n_art;
    let art_start = n_struct + n_slack;
    let mut tab = Tableau {
        a: Vec::with_capacity(rows.len()),
        b: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
    };
    let mut art = art_start;
    for (mut row, b, s) in rows {
        row.resize(ncols, Rational::zero());
        let basic = match s {
            Some(col) => col,
            None => {
                row[art] = Rational::one();
                art += 1;
                art - 1
            }
        };
        tab.a.push(row);
        tab.b.push(b);
        tab.basis.push(basic);
    }

    // Phase 1: drive the artificial columns to zero.
    if n_art > 0 {
        let mut cost = vec![Rational::zero(); ncols];
        for c in cost.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        let all = vec![true; ncols];
        tab.optimize(&cost, &all)
            .expect("phase one objective is bounded by zero");
        let infeasible = tab
            .basis
            .iter()
            .zip(&tab.b)
            .any(|(&col, b)| col >= art_start && b.is_positive());
        if infeasible {
            return Ok(Feasibility::Infeasible);
        }
        tab.expel_artificials(art_start);
    }

    if has_strict {
        let mut cost = vec![Rational::zero(); ncols];
        cost[t_col] = Rational::one();
        let allowed: Vec<bool> = (0..ncols).map(|c| c < art_start).collect();
        tab.optimize(&cost, &allowed).expect("t is capped at one");
        if !tab.value(t_col).is_positive() {
            return Ok(Feasibility::Infeasible);
        }
    }

    let witness: Vec<Rational> = (0..dim)
        .map(|k| tab.value(2 * k) - tab.value(2 * k + 1))
        .collect();
    debug_assert!(live.iter().all(|c| c.is_satisfied_by(&witness)));
    Ok(Feasibility::Feasible(witness))
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
}

#[derive(Debug)]
struct Unbounded;

impl Tableau {
    fn value(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&c| c == col)
            .map_or_else(Rational::zero, |r| self.b[r].clone())
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = super::recip(&self.a[r][c]);
        for v in self.a[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.b[r] *= &inv;
        let prow = self.a[r].clone();
        let pb = self.b[r].clone();
        for k in 0..self.a.len() {
            if k == r || self.a[k][c].is_zero() {
                continue;
            }
            let f = self.a[k][c].clone();
            for (v, p) in self.a[k].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.b[k] -= &f * &pb;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · y` from the current basic feasible solution.
    fn optimize(
        &mut self,
        cost: &[Rational],
        allowed: &[bool],
    ) -> std::result::Result<(), Unbounded> {
        let ncols = cost.len();
        loop {
            let entering = (0..ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut red = cost[j].clone();
                for (r, &bc) in self.basis.iter().enumerate() {
                    if !cost[bc].is_zero() && !self.a[r][j].is_zero() {
                        red -= &cost[bc] * &self.a[r][j];
                    }
                }
                red.is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.a[r][j];
                let better = match &best {
                    None => true,
                    Some((br, bq)) => {
                        ratio < *bq || (ratio == *bq && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(Unbounded);
            };
            self.pivot(r, j);
        }
    }

    /// Removes artificial columns that remain basic at level zero, dropping
    /// rows that turn out to be redundant.
    fn expel_artificials(&mut self, art_start: usize) {
        let mut r = 0;
        while r < self.a.len() {
            if self.basis[r] < art_start {
                r += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.a[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.a.remove(r);
                    self.b.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}
