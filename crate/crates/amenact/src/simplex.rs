//! Two-phase primal simplex over exact rationals, Bland's rule.
//!
//! Dense tableaus are plenty for the LP sizes in this workbench (tens of
//! variables); exactness matters more than speed because certificates are
//! replayed bit-for-bit.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{rat_zero, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// values of the original variables (empty unless Optimal)
    pub x: Vec<Rat>,
    pub objective: Rat,
}

/// minimize obj·x subject to rows, x ≥ 0.
#[derive(Debug, Clone, Default)]
pub struct LpBuilder {
    pub n: usize,
    pub obj: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, Cmp, Rat)>,
}

impl LpBuilder {
    pub fn new(n: usize) -> Self {
        LpBuilder { n, obj: vec![rat_zero(); n], rows: Vec::new() }
    }

    pub fn objective(&mut self, coeffs: Vec<Rat>) -> &mut Self {
        assert_eq!(coeffs.len(), self.n);
        self.obj = coeffs;
        self
    }

    pub fn constraint(&mut self, coeffs: Vec<Rat>, cmp: Cmp, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.n);
        self.rows.push((coeffs, cmp, rhs));
        self
    }

    pub fn solve(&self) -> Result<LpSolution> {
        solve_lp(self)
    }
}

struct Tableau {
    /// m×w coefficient matrix (w = total columns)
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].clone();
        for j in 0..self.width {
            self.a[row][j] = &self.a[row][j] / &inv;
        }
        self.b[row] = &self.b[row] / &inv;
        for i in 0..self.a.len() {
            if i == row {
                continue;
            }
            let factor = self.a[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.width {
                let delta = &factor * &self.a[row][j];
                self.a[i][j] = &self.a[i][j] - &delta;
            }
            let delta = &factor * &self.b[row];
            self.b[i] = &self.b[i] - &delta;
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = smallest index with negative reduced cost,
    /// leaving = ratio test with smallest basis index tie-break.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> LpStatus {
        loop {
            // reduced costs: c_j − c_B · column_j
            let mut entering: Option<usize> = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() {
                        let delta = &cost[bi] * &self.a[i][j];
                        red = &red - &delta;
                    }
                }
                if red.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return LpStatus::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    match &leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]) {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return LpStatus::Unbounded;
            };
            self.pivot(row, col);
        }
    }
}

fn solve_lp(lp: &LpBuilder) -> Result<LpSolution> {
    let n = lp.n;
    let m = lp.rows.len();
    // columns: original | slack/surplus | artificial
    let n_slack = lp.rows.iter().filter(|(_, c, _)| *c != Cmp::Eq).count();
    let width = n + n_slack + m;
    let mut a = vec![vec![rat_zero(); width]; m];
    let mut b = vec![rat_zero(); m];
    let mut slack_at = n;
    for (i, (coeffs, cmp, rhs)) in lp.rows.iter().enumerate() {
        for (j, v) in coeffs.iter().enumerate() {
            a[i][j] = v.clone();
        }
        b[i] = rhs.clone();
        match cmp {
            Cmp::Le => {
                a[i][slack_at] = Rat::one();
                slack_at += 1;
            }
            Cmp::Ge => {
                a[i][slack_at] = -Rat::one();
                slack_at += 1;
            }
            Cmp::Eq => {}
        }
        if b[i].is_negative() {
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
        }
        // artificial variable, initial basis
        a[i][n + n_slack + i] = Rat::one();
    }

    let basis: Vec<usize> = (0..m).map(|i| n + n_slack + i).collect();
    let mut tab = Tableau { a, b, basis, width };

    // phase 1: minimize the sum of artificials
    let mut phase1 = vec![rat_zero(); width];
    for j in n + n_slack..width {
        phase1[j] = Rat::one();
    }
    match tab.optimize(&phase1, width) {
        LpStatus::Unbounded => {
            return Err(Error::Invalid("phase-1 unbounded: malformed LP".into()))
        }
        _ => {}
    }
    let phase1_value: Rat = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n + n_slack)
        .map(|(i, _)| tab.b[i].clone())
        .sum();
    if !phase1_value.is_zero() {
        return Ok(LpSolution { status: LpStatus::Infeasible, x: vec![], objective: rat_zero() });
    }
    // drive remaining artificials out or drop redundant rows
    let mut drop_rows = Vec::new();
    for i in 0..tab.a.len() {
        if tab.basis[i] >= n + n_slack {
            if let Some(col) = (0..n + n_slack).find(|&j| !tab.a[i][j].is_zero()) {
                tab.pivot(i, col);
            } else {
                drop_rows.push(i);
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        tab.a.remove(i);
        tab.b.remove(i);
        tab.basis.remove(i);
    }

    // phase 2 over original + slack columns only
    let mut cost = vec![rat_zero(); width];
    for (j, v) in lp.obj.iter().enumerate() {
        cost[j] = v.clone();
    }
    let status = tab.optimize(&cost, n + n_slack);
    if status == LpStatus::Unbounded {
        return Ok(LpSolution { status, x: vec![], objective: rat_zero() });
    }

    let mut x = vec![rat_zero(); n];
    for (i, &bi) in tab.basis.iter().enumerate() {
        if bi < n {
            x[bi] = tab.b[i].clone();
        }
    }
    let objective = lp.obj.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { status: LpStatus::Optimal, x, objective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn tiny_lp_optimum() {
        // min -x - y st x + y ≤ 1, x,y ≥ 0 → objective -1 on the segment
        let mut lp = LpBuilder::new(2);
        lp.objective(vec![rat(-1, 1), rat(-1, 1)]);
        lp.constraint(vec![rat(1, 1), rat(1, 1)], Cmp::Le, rat(1, 1));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, rat(-1, 1));
    }

    #[test]
    fn equality_and_fractional_answer() {
        // min x st 3x = 1 → x = 1/3
        let mut lp = LpBuilder::new(1);
        lp.objective(vec![rat(1, 1)]);
        lp.constraint(vec![rat(3, 1)], Cmp::Eq, rat(1, 1));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.x[0], rat(1, 3));
    }

    #[test]
    fn infeasible_detected() {
        let mut lp = LpBuilder::new(1);
        lp.objective(vec![rat(1, 1)]);
        lp.constraint(vec![rat(1, 1)], Cmp::Ge, rat(2, 1));
        lp.constraint(vec![rat(1, 1)], Cmp::Le, rat(1, 1));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LpBuilder::new(1);
        lp.objective(vec![rat(-1, 1)]);
        lp.constraint(vec![rat(-1, 1)], Cmp::Le, rat(0, 1));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
    }

    #[test]
    fn optimum_never_above_feasible_points() {
        // randomized: optimum of min c·x over a box-ish polytope is ≤ value
        // at any feasible probe point
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..20 {
            let n = 3;
            let mut lp = LpBuilder::new(n);
            let c: Vec<Rat> =
                (0..n).map(|_| rat(rng.below(9) as i64 - 4, 1 + rng.below(3) as i64)).collect();
            lp.objective(c.clone());
            for j in 0..n {
                let mut row = vec![rat(0, 1); n];
                row[j] = rat(1, 1);
                lp.constraint(row, Cmp::Le, rat(1 + rng.below(5) as i64, 1));
            }
            let mut sum_row = vec![rat(1, 1); n];
            sum_row[0] = rat(2, 1);
            lp.constraint(sum_row, Cmp::Ge, rat(1, 2));
            let sol = lp.solve().unwrap();
            if sol.status != LpStatus::Optimal {
                continue;
            }
            // probe: x = (1/2, 1/2, 1/2) is feasible for the box rows and
            // the ≥ row (2·1/2 + 1/2 + 1/2 ≥ 1/2)
            let probe = vec![rat(1, 2); n];
            let probe_val: Rat = c.iter().zip(&probe).map(|(a, b)| a * b).sum();
            assert!(sol.objective <= probe_val);
        }
    }
}
