//! Exact two-phase simplex over `BigRational` with Bland's rule.
//!
//! Variables are implicitly non-negative. Every solve returns a status, and
//! optimal solves carry a dual vector so the optimum can be re-checked with
//! [`LpSolution::verify`] without trusting the pivoting code.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<BigRational>,
    pub primal: Vec<BigRational>,
    /// One multiplier per constraint, signed for the dual of the stated sense:
    /// for `Max`, `Aᵀy ≥ c` with `y ≥ 0` on `≤` rows and `y ≤ 0` on `≥` rows;
    /// for `Min`, `Aᵀy ≤ c` with the opposite signs.
    pub dual: Vec<BigRational>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<BigRational>) -> Self {
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.objective.len(), "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpSolution {
        Tableau::build(self).run(self)
    }

    pub fn is_feasible_point(&self, x: &[BigRational]) -> bool {
        if x.len() != self.nvars() || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl LpSolution {
    /// Check primal feasibility, dual feasibility and equal objective values.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        if self.status != LpStatus::Optimal {
            return false;
        }
        let Some(value) = &self.value else {
            return false;
        };
        if !lp.is_feasible_point(&self.primal) || dot(&lp.objective, &self.primal) != *value {
            return false;
        }
        if self.dual.len() != lp.constraints.len() {
            return false;
        }
        let max = lp.sense == Sense::Max;
        for (c, y) in lp.constraints.iter().zip(&self.dual) {
            let ok = match (c.relation, max) {
                (Relation::Eq, _) => true,
                (Relation::Le, true) | (Relation::Ge, false) => !y.is_negative(),
                (Relation::Ge, true) | (Relation::Le, false) => !y.is_positive(),
            };
            if !ok {
                return false;
            }
        }
        for j in 0..lp.nvars() {
            let col: BigRational = lp
                .constraints
                .iter()
                .zip(&self.dual)
                .fold(BigRational::zero(), |acc, (c, y)| acc + &c.coeffs[j] * y);
            let ok = if max {
                col >= lp.objective[j]
            } else {
                col <= lp.objective[j]
            };
            if !ok {
                return false;
            }
        }
        let by = lp
            .constraints
            .iter()
            .zip(&self.dual)
            .fold(BigRational::zero(), |acc, (c, y)| acc + &c.rhs * y);
        by == *value
    }
}

struct Tableau {
    // rows[i] has `ncols` entries followed by the right-hand side
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    ncols: usize,
    nx: usize,
    first_art: usize,
    // column that is the identity column e_i for row i in the original system
    unit_col: Vec<usize>,
    flipped: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let nx = lp.nvars();
        let mut rels = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            flipped.push(flip);
            rels.push(match (c.relation, flip) {
                (Relation::Le, false) | (Relation::Ge, true) => Relation::Le,
                (Relation::Ge, false) | (Relation::Le, true) => Relation::Ge,
                (Relation::Eq, _) => Relation::Eq,
            });
        }
        let n_slack = rels.iter().filter(|r| **r != Relation::Eq).count();
        let n_art = rels.iter().filter(|r| **r != Relation::Le).count();
        let first_art = nx + n_slack;
        let ncols = first_art + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit_col = Vec::with_capacity(m);
        let (mut s, mut a) = (nx, first_art);
        for (i, c) in lp.constraints.iter().enumerate() {
            let sign = if flipped[i] {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            let mut row = vec![BigRational::zero(); ncols + 1];
            for (j, v) in c.coeffs.iter().enumerate() {
                row[j] = v * &sign;
            }
            row[ncols] = &c.rhs * &sign;
            match rels[i] {
                Relation::Le => {
                    row[s] = BigRational::one();
                    basis.push(s);
                    unit_col.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -BigRational::one();
                    s += 1;
                    row[a] = BigRational::one();
                    basis.push(a);
                    unit_col.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = BigRational::one();
                    basis.push(a);
                    unit_col.push(a);
                    a += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            ncols,
            nx,
            first_art,
            unit_col,
            flipped,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximize `cost · x` over the current basis. Returns false if unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            // Bland: lowest-index column with positive reduced cost
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        rc -= &cost[self.basis[i]] * &row[j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpSolution {
        let m = self.rows.len();
        let infeasible = LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            primal: Vec::new(),
            dual: Vec::new(),
        };
        if self.first_art < self.ncols {
            let mut cost = vec![BigRational::zero(); self.ncols];
            for c in cost.iter_mut().skip(self.first_art) {
                *c = -BigRational::one();
            }
            self.optimize(&cost, self.ncols);
            let art_sum = self
                .rows
                .iter()
                .zip(&self.basis)
                .filter(|(_, &b)| b >= self.first_art)
                .fold(BigRational::zero(), |acc, (row, _)| acc + &row[self.ncols]);
            if !art_sum.is_zero() {
                return infeasible;
            }
            // drive zero-level artificials out of the basis where possible
            for i in 0..m {
                if self.basis[i] < self.first_art {
                    continue;
                }
                if let Some(j) = (0..self.first_art)
                    .find(|&j| !self.rows[i][j].is_zero() && !self.basis.contains(&j))
                {
                    self.pivot(i, j);
                }
            }
        }
        let mut cost = vec![BigRational::zero(); self.ncols];
        for (j, c) in lp.objective.iter().enumerate() {
            cost[j] = if lp.sense == Sense::Max {
                c.clone()
            } else {
                -c.clone()
            };
        }
        if !self.optimize(&cost, self.first_art) {
            return LpSolution {
                status: LpStatus::Unbounded,
                value: None,
                primal: Vec::new(),
                dual: Vec::new(),
            };
        }
        let mut x = vec![BigRational::zero(); self.nx];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nx {
                x[b] = self.rows[i][self.ncols].clone();
            }
        }
        let value = dot(&lp.objective, &x);
        let dual = (0..m)
            .map(|i| {
                let col = self.unit_col[i];
                let mut y = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(BigRational::zero(), |acc, (row, &b)| acc + &cost[b] * &row[col]);
                if self.flipped[i] {
                    y = -y;
                }
                if lp.sense == Sense::Min {
                    y = -y;
                }
                y
            })
            .collect();
        LpSolution {
            status: LpStatus::Optimal,
            value: Some(value),
            primal: x,
            dual,
        }
    }
}
