//! Exact feasibility by a dictionary simplex with Bland's rule.
//!
//! Equalities are eliminated first, leaving a system over a parameter
//! `y` of the solution flat. Strict rows `a·y > b` are relaxed to
//! `a·y - t >= b` with a shared `0 <= t <= 1`; the system is feasible iff the
//! maximum of `t` is positive. Free parameters are pivoted into the basis
//! once and never leave, so the dictionary has only a handful of columns.

use num_traits::{One, Signed, Zero};

use super::{check_dims, dot, solve_affine_system, LinearConstraint, Rational, Relation};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }

    pub fn into_witness(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides whether the mixed system has a solution in `R^dim`, returning an
/// exact witness that satisfies every constraint (strict ones strictly).
pub fn feasible(constraints: &[LinearConstraint], dim: usize) -> Result<Feasibility> {
    check_dims(constraints, dim)?;
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for c in constraints {
        match c.trivial() {
            Some(true) => {}
            Some(false) => return Ok(Feasibility::Infeasible),
            None if c.relation() == Relation::Eq => equalities.push(c.clone()),
            None => inequalities.push(c),
        }
    }
    let Some(flat) = solve_affine_system(&equalities, dim)? else {
        return Ok(Feasibility::Infeasible);
    };

    // Rewrite each inequality over the flat parameters.
    let mut rows = Vec::with_capacity(inequalities.len());
    for c in inequalities {
        let coeffs: Vec<Rational> = flat.basis.iter().map(|v| dot(c.coeffs(), v)).collect();
        let rhs = c.offset() - dot(c.coeffs(), &flat.point);
        let strict = c.relation() == Relation::Gt;
        if coeffs.iter().all(Zero::is_zero) {
            let holds = if strict {
                rhs.is_negative()
            } else {
                !rhs.is_positive()
            };
            if !holds {
                return Ok(Feasibility::Infeasible);
            }
            continue;
        }
        rows.push((coeffs, rhs, strict));
    }

    let Some(y) = solve_parametric(&rows, flat.dim) else {
        return Ok(Feasibility::Infeasible);
    };
    let mut witness = flat.point;
    for (yj, v) in y.iter().zip(&flat.basis) {
        if yj.is_zero() {
            continue;
        }
        for (w, vk) in witness.iter_mut().zip(v) {
            *w += yj * vk;
        }
    }
    debug_assert!(constraints.iter().all(|c| c.is_satisfied_by(&witness)));
    Ok(Feasibility::Feasible(witness))
}

/// Finds `y` with `a·y >= b` (or `>` when flagged) for every row.
fn solve_parametric(rows: &[(Vec<Rational>, Rational, bool)], k: usize) -> Option<Vec<Rational>> {
    if rows.is_empty() {
        return Some(vec![Rational::zero(); k]);
    }
    let has_strict = rows.iter().any(|r| r.2);
    // Variable ids: parameters 0..k, then t, then one slack per row, then
    // the slack of t <= 1, then the phase-one auxiliary.
    let t = k;
    let slack0 = k + 1;
    let mut nonbasic: Vec<usize> = (0..k).collect();
    if has_strict {
        nonbasic.push(t);
    }
    let mut dict = Dictionary {
        consts: Vec::new(),
        coeffs: Vec::new(),
        basic: Vec::new(),
        nonbasic,
        obj_const: Rational::zero(),
        obj: Vec::new(),
        free: k,
    };
    for (r, (a, b, strict)) in rows.iter().enumerate() {
        let mut line = a.clone();
        if has_strict {
            line.push(if *strict {
                -Rational::one()
            } else {
                Rational::zero()
            });
        }
        dict.consts.push(-b.clone());
        dict.coeffs.push(line);
        dict.basic.push(slack0 + r);
    }
    if has_strict {
        let mut line = vec![Rational::zero(); k];
        line.push(-Rational::one());
        dict.consts.push(Rational::one());
        dict.coeffs.push(line);
        dict.basic.push(slack0 + rows.len());
    }
    let aux = slack0 + rows.len() + 1;
    dict.obj = vec![Rational::zero(); dict.nonbasic.len()];

    // Parameters enter once and are then pinned to their rows.
    for v in 0..k {
        let j = dict.column_of(v).expect("parameters start nonbasic");
        if let Some(r) = (0..dict.basic.len())
            .find(|&r| !dict.is_free(dict.basic[r]) && !dict.coeffs[r][j].is_zero())
        {
            dict.pivot(r, j);
        }
    }

    // Phase one with a single auxiliary variable added to every bounded row.
    let worst = (0..dict.basic.len())
        .filter(|&r| !dict.is_free(dict.basic[r]) && dict.consts[r].is_negative())
        .min_by(|&a, &b| dict.consts[a].cmp(&dict.consts[b]).then(a.cmp(&b)));
    if let Some(r0) = worst {
        for r in 0..dict.basic.len() {
            let v = if dict.is_free(dict.basic[r]) {
                Rational::zero()
            } else {
                Rational::one()
            };
            dict.coeffs[r].push(v);
        }
        dict.nonbasic.push(aux);
        dict.obj = vec![Rational::zero(); dict.nonbasic.len()];
        *dict.obj.last_mut().unwrap() = -Rational::one();
        dict.pivot(r0, dict.nonbasic.len() - 1);
        dict.maximize();
        if dict.obj_const.is_negative() {
            return None;
        }
        if let Some(r) = dict.basic.iter().position(|&v| v == aux) {
            match (0..dict.nonbasic.len())
                .find(|&j| dict.can_enter(j) && !dict.coeffs[r][j].is_zero())
            {
                Some(j) => dict.pivot(r, j),
                None => dict.remove_row(r),
            }
        }
        let j = dict.column_of(aux).expect("auxiliary left the basis");
        dict.remove_column(j);
    }

    if has_strict {
        dict.obj_const = Rational::zero();
        dict.obj = vec![Rational::zero(); dict.nonbasic.len()];
        match dict.column_of(t) {
            Some(j) => dict.obj[j] = Rational::one(),
            None => {
                let r = dict
                    .basic
                    .iter()
                    .position(|&v| v == t)
                    .expect("t is somewhere");
                dict.obj_const = dict.consts[r].clone();
                dict.obj = dict.coeffs[r].clone();
            }
        }
        dict.maximize();
        if !dict.obj_const.is_positive() {
            return None;
        }
    }

    Some(
        (0..k)
            .map(|v| {
                dict.basic
                    .iter()
                    .position(|&b| b == v)
                    .map_or_else(Rational::zero, |r| dict.consts[r].clone())
            })
            .collect(),
    )
}

/// `basic[r] = consts[r] + coeffs[r] · nonbasic`; variables below `free` are
/// unrestricted in sign, everything else is nonnegative.
struct Dictionary {
    consts: Vec<Rational>,
    coeffs: Vec<Vec<Rational>>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    obj_const: Rational,
    obj: Vec<Rational>,
    free: usize,
}

impl Dictionary {
    fn is_free(&self, v: usize) -> bool {
        v < self.free
    }

    fn column_of(&self, v: usize) -> Option<usize> {
        self.nonbasic.iter().position(|&x| x == v)
    }

    /// Free parameters that could not be pinned have zero columns; they stay
    /// at zero and never enter.
    fn can_enter(&self, j: usize) -> bool {
        !self.is_free(self.nonbasic[j])
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = super::recip(&self.coeffs[r][j]);
        let neg_inv = -inv.clone();
        // Solve row r for the entering variable.
        let mut row = std::mem::take(&mut self.coeffs[r]);
        for (l, c) in row.iter_mut().enumerate() {
            if l == j {
                *c = inv.clone();
            } else if !c.is_zero() {
                *c *= &neg_inv;
            }
        }
        let konst = &self.consts[r] * &neg_inv;
        let substitute = |target: &mut Vec<Rational>, target_const: &mut Rational| {
            let a = std::mem::take(&mut target[j]);
            if a.is_zero() {
                return;
            }
            for (l, c) in row.iter().enumerate() {
                if l == j {
                    target[l] = &a * c;
                } else if !c.is_zero() {
                    target[l] += &a * c;
                }
            }
            *target_const += &a * &konst;
        };
        for k in 0..self.coeffs.len() {
            if k != r {
                substitute(&mut self.coeffs[k], &mut self.consts[k]);
            }
        }
        substitute(&mut self.obj, &mut self.obj_const);
        self.coeffs[r] = row;
        self.consts[r] = konst;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[j]);
    }

    /// Bland's rule on variable ids. The objective is bounded in both phases.
    fn maximize(&mut self) {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.can_enter(j) && self.obj[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(j) = entering else {
                return;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.basic.len() {
                if self.is_free(self.basic[r]) || !self.coeffs[r][j].is_negative() {
                    continue;
                }
                let ratio = &self.consts[r] / -&self.coeffs[r][j];
                let better = match &best {
                    None => true,
                    Some((br, bq)) => {
                        ratio < *bq || (ratio == *bq && self.basic[r] < self.basic[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let (r, _) = best.expect("objective is bounded");
            self.pivot(r, j);
        }
    }

    fn remove_row(&mut self, r: usize) {
        self.consts.remove(r);
        self.coeffs.remove(r);
        self.basic.remove(r);
    }

    fn remove_column(&mut self, j: usize) {
        for row in &mut self.coeffs {
            row.remove(j);
        }
        self.obj.remove(j);
        self.nonbasic.remove(j);
    }
}
