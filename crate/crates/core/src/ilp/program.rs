//! Exact bounded integer programming by depth-first branch and bound.
//!
//! Every variable has a finite box, so the search is a plain enumeration of
//! values in ascending order, pruned by bound propagation over the rows. The
//! first feasible point found is therefore the lexicographically smallest, and
//! with an objective the incumbent is only replaced on strict improvement.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::search::{Search, SearchLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub sense: Sense,
    pub terms: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerProgram {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Objective>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProgramOutcome {
    /// Lexicographically smallest feasible point, or the smallest optimal one.
    Solved {
        values: Vec<i64>,
        objective: Option<i64>,
    },
    Infeasible,
}

impl ProgramOutcome {
    pub fn values(&self) -> Option<&[i64]> {
        match self {
            ProgramOutcome::Solved { values, .. } => Some(values),
            ProgramOutcome::Infeasible => None,
        }
    }
}

fn token(name: &str) -> String {
    let cleaned: String = name.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
    if cleaned.is_empty() {
        "_".into()
    } else {
        cleaned
    }
}

impl IntegerProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, name: impl Into<String>, lower: i64, upper: i64) -> usize {
        self.variables.push(Variable { name: token(&name.into()), lower, upper });
        self.variables.len() - 1
    }

    pub fn add_constraint(&mut self, name: impl Into<String>, terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        self.constraints.push(Constraint { name: token(&name.into()), terms, relation, rhs });
    }

    pub fn set_objective(&mut self, sense: Sense, terms: Vec<(usize, i64)>) {
        self.objective = Some(Objective { sense, terms });
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn evaluate(&self, terms: &[(usize, i64)], values: &[i64]) -> i64 {
        terms.iter().map(|&(j, a)| a * values[j]).sum()
    }

    /// Whether `values` lies in every box and satisfies every row.
    pub fn is_feasible(&self, values: &[i64]) -> bool {
        values.len() == self.variables.len()
            && self.variables.iter().zip(values).all(|(v, &x)| v.lower <= x && x <= v.upper)
            && self.constraints.iter().all(|c| {
                let lhs = self.evaluate(&c.terms, values);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        let rows = self.constraints.iter().map(|c| &c.terms).chain(self.objective.iter().map(|o| &o.terms));
        for terms in rows {
            if let Some(&(j, _)) = terms.iter().find(|&&(j, _)| j >= n) {
                return Err(Error::InvalidArgument(format!("program references unknown variable {j}")));
            }
        }
        Ok(())
    }

    /// Line-oriented text form: `var NAME LO HI`, `con NAME COEF VAR ... REL RHS`,
    /// and an optional `obj max|min COEF VAR ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in &self.variables {
            let _ = writeln!(out, "var {} {} {}", v.name, v.lower, v.upper);
        }
        let linear = |terms: &[(usize, i64)]| -> String {
            terms.iter().map(|&(j, a)| format!(" {a} {}", self.variables[j].name)).collect()
        };
        for c in &self.constraints {
            let _ = writeln!(out, "con {}{} {} {}", c.name, linear(&c.terms), c.relation.symbol(), c.rhs);
        }
        if let Some(obj) = &self.objective {
            let sense = if obj.sense == Sense::Maximize { "max" } else { "min" };
            let _ = writeln!(out, "obj {sense}{}", linear(&obj.terms));
        }
        out
    }
}

pub fn solve_integer_program(program: &IntegerProgram, limits: &SearchLimits) -> Result<ProgramOutcome> {
    solve_integer_program_in(program, &mut Search::new(limits))
}

pub fn solve_integer_program_in(program: &IntegerProgram, search: &mut Search) -> Result<ProgramOutcome> {
    program.validate()?;
    search.add_variables(program.variables.len() as u64);
    let mut rows = Vec::new();
    for c in &program.constraints {
        let terms: Vec<(usize, i128)> = c.terms.iter().map(|&(j, a)| (j, a as i128)).filter(|&(_, a)| a != 0).collect();
        let negated = || terms.iter().map(|&(j, a)| (j, -a)).collect::<Vec<_>>();
        match c.relation {
            Relation::Le => rows.push(Row { terms: terms.clone(), rhs: c.rhs as i128, equality: false }),
            Relation::Ge => rows.push(Row { terms: negated(), rhs: -(c.rhs as i128), equality: false }),
            Relation::Eq => {
                rows.push(Row { terms: terms.clone(), rhs: c.rhs as i128, equality: true });
                rows.push(Row { terms: negated(), rhs: -(c.rhs as i128), equality: false });
            }
        }
    }
    // Maximisation internally; the cutoff row asks for strictly better values.
    let objective: Option<Vec<(usize, i128)>> = program.objective.as_ref().map(|o| {
        let sign = if o.sense == Sense::Maximize { 1 } else { -1 };
        o.terms.iter().map(|&(j, a)| (j, sign * a as i128)).collect()
    });
    let mut engine = Engine::new(rows, objective, program.variables.len(), search);
    let lo: Vec<i128> = program.variables.iter().map(|v| v.lower as i128).collect();
    let hi: Vec<i128> = program.variables.iter().map(|v| v.upper as i128).collect();
    engine.dfs(lo, hi, None)?;
    Ok(match engine.best {
        None => ProgramOutcome::Infeasible,
        Some((values, _)) => {
            let objective = program.objective.as_ref().map(|o| program.evaluate(&o.terms, &values));
            ProgramOutcome::Solved { values, objective }
        }
    })
}

/// `terms · x <= rhs`; `equality` marks the first half of an equation for the
/// divisibility check.
struct Row {
    terms: Vec<(usize, i128)>,
    rhs: i128,
    equality: bool,
}

struct Engine<'s> {
    rows: Vec<Row>,
    /// Rows mentioning each variable; the cutoff row is `rows.len()`.
    rows_of: Vec<Vec<usize>>,
    objective: Option<Vec<(usize, i128)>>,
    best: Option<(Vec<i64>, i128)>,
    search: &'s mut Search,
}

/// Row visits allowed per propagation, as a multiple of the row count; bound
/// tightening on wide boxes can otherwise creep one unit at a time.
const PROPAGATION_ROUNDS: usize = 64;

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Tightens the box against one `terms · x <= rhs` row, recording changed
/// variables; false when the box becomes empty.
fn tighten(terms: &[(usize, i128)], rhs: i128, lo: &mut [i128], hi: &mut [i128], changed: &mut Vec<usize>) -> bool {
    let min_of = |j: usize, a: i128, lo: &[i128], hi: &[i128]| if a > 0 { a * lo[j] } else { a * hi[j] };
    let min_activity: i128 = terms.iter().map(|&(j, a)| min_of(j, a, lo, hi)).sum();
    if min_activity > rhs {
        return false;
    }
    for &(j, a) in terms {
        let slack = rhs - (min_activity - min_of(j, a, lo, hi));
        if a > 0 {
            let bound = div_floor(slack, a);
            if bound < hi[j] {
                hi[j] = bound;
                changed.push(j);
            }
        } else {
            let bound = div_ceil(slack, a);
            if bound > lo[j] {
                lo[j] = bound;
                changed.push(j);
            }
        }
        if lo[j] > hi[j] {
            return false;
        }
    }
    true
}

impl Engine<'_> {
    fn new<'s>(
        rows: Vec<Row>,
        objective: Option<Vec<(usize, i128)>>,
        variables: usize,
        search: &'s mut Search,
    ) -> Engine<'s> {
        let mut rows_of = vec![Vec::new(); variables];
        for (r, row) in rows.iter().enumerate() {
            for &(j, _) in &row.terms {
                rows_of[j].push(r);
            }
        }
        if let Some(obj) = &objective {
            for &(j, _) in obj {
                rows_of[j].push(rows.len());
            }
        }
        Engine { rows, rows_of, objective, best: None, search }
    }

    /// Propagates from the rows of `touched`, or from every row when `None`.
    fn propagate(&self, lo: &mut [i128], hi: &mut [i128], touched: Option<usize>) -> bool {
        if lo.iter().zip(hi.iter()).any(|(l, h)| l > h) {
            return false;
        }
        let cutoff = match (&self.objective, &self.best) {
            (Some(obj), Some((_, value))) => {
                Some((obj.iter().map(|&(j, a)| (j, -a)).collect::<Vec<_>>(), -(value + 1)))
            }
            _ => None,
        };
        let total = self.rows.len() + 1;
        let mut queued = vec![false; total];
        let mut queue = std::collections::VecDeque::new();
        let push = |r: usize, queue: &mut std::collections::VecDeque<usize>, queued: &mut Vec<bool>| {
            if !queued[r] && (r < self.rows.len() || cutoff.is_some()) {
                queued[r] = true;
                queue.push_back(r);
            }
        };
        match touched {
            None => (0..total).for_each(|r| push(r, &mut queue, &mut queued)),
            Some(j) => self.rows_of[j].iter().for_each(|&r| push(r, &mut queue, &mut queued)),
        }
        // The incumbent may have improved since the parent propagated.
        push(self.rows.len(), &mut queue, &mut queued);
        let mut visits = PROPAGATION_ROUNDS * total;
        let mut changed = Vec::new();
        while let Some(r) = queue.pop_front() {
            queued[r] = false;
            let ok = if r < self.rows.len() {
                let row = &self.rows[r];
                tighten(&row.terms, row.rhs, lo, hi, &mut changed) && (!row.equality || self.divisible(row, lo, hi))
            } else {
                let (terms, rhs) = cutoff.as_ref().expect("cutoff row is queued only when present");
                tighten(terms, *rhs, lo, hi, &mut changed)
            };
            if !ok {
                return false;
            }
            if visits == 0 {
                break;
            }
            visits -= 1;
            for j in changed.drain(..) {
                for &r2 in &self.rows_of[j] {
                    push(r2, &mut queue, &mut queued);
                }
            }
        }
        true
    }

    fn divisible(&self, row: &Row, lo: &[i128], hi: &[i128]) -> bool {
        let mut g = 0;
        let mut fixed = 0;
        for &(j, a) in &row.terms {
            if lo[j] == hi[j] {
                fixed += a * lo[j];
            } else {
                g = gcd(g, a);
            }
        }
        if g == 0 {
            fixed == row.rhs
        } else {
            (row.rhs - fixed) % g == 0
        }
    }

    fn dfs(&mut self, mut lo: Vec<i128>, mut hi: Vec<i128>, touched: Option<usize>) -> Result<bool> {
        self.search.tick()?;
        if !self.propagate(&mut lo, &mut hi, touched) {
            return Ok(false);
        }
        let Some(j) = (0..lo.len()).find(|&j| lo[j] < hi[j]) else {
            let value = self.objective.as_ref().map_or(0, |obj| obj.iter().map(|&(j, a)| a * lo[j]).sum());
            self.best = Some((lo.iter().map(|&x| x as i64).collect(), value));
            // Without an objective the first point is the answer.
            return Ok(self.objective.is_none());
        };
        for value in lo[j]..=hi[j] {
            let (mut l, mut h) = (lo.clone(), hi.clone());
            l[j] = value;
            h[j] = value;
            if self.dfs(l, h, Some(j))? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(program: &IntegerProgram) -> ProgramOutcome {
        solve_integer_program(program, &SearchLimits::default()).unwrap()
    }

    #[test]
    fn lexicographically_smallest_point() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", 0, 2);
        let y = ip.add_variable("y", 0, 2);
        ip.add_constraint("sum", vec![(x, 1), (y, 1)], Relation::Eq, 3);
        assert_eq!(solve(&ip).values(), Some(&[1, 2][..]));
    }

    #[test]
    fn contradictory_equations() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", -5, 5);
        ip.add_constraint("a", vec![(x, 1)], Relation::Eq, 1);
        ip.add_constraint("b", vec![(x, 1)], Relation::Eq, 2);
        assert_eq!(solve(&ip), ProgramOutcome::Infeasible);
    }

    #[test]
    fn maximisation() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", 0, 2);
        let y = ip.add_variable("y", 0, 2);
        ip.add_constraint("cap", vec![(x, 1), (y, 1)], Relation::Le, 3);
        ip.set_objective(Sense::Maximize, vec![(x, 1), (y, 1)]);
        match solve(&ip) {
            ProgramOutcome::Solved { values, objective } => {
                assert_eq!(objective, Some(3));
                assert_eq!(values, vec![1, 2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimisation_with_negative_coefficients() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x", -3, 3);
        let y = ip.add_variable("y", -3, 3);
        ip.add_constraint("c", vec![(x, 2), (y, -3)], Relation::Ge, 1);
        ip.set_objective(Sense::Minimize, vec![(x, 1), (y, 1)]);
        let outcome = solve(&ip);
        let values = outcome.values().unwrap();
        assert!(ip.is_feasible(values));
        // 2x - 3y >= 1 with x + y minimal: x = -3, y = -3 gives 3 >= 1.
        assert_eq!(values, &[-3, -3]);
    }

    #[test]
    fn parity_is_caught_without_branching() {
        let mut ip = IntegerProgram::new();
        let vars: Vec<usize> = (0..12).map(|i| ip.add_variable(format!("x{i}"), 0, 6)).collect();
        ip.add_constraint("even", vars.iter().map(|&j| (j, 2)).collect(), Relation::Eq, 13);
        let mut search = Search::new(&SearchLimits::default());
        assert_eq!(solve_integer_program_in(&ip, &mut search).unwrap(), ProgramOutcome::Infeasible);
        assert_eq!(search.counters.nodes, 1);
    }

    #[test]
    fn dump_format() {
        let mut ip = IntegerProgram::new();
        let x = ip.add_variable("x a", 0, 2);
        ip.add_constraint("c", vec![(x, 3)], Relation::Le, 4);
        ip.set_objective(Sense::Minimize, vec![(x, 1)]);
        assert_eq!(ip.dump(), "var x_a 0 2\ncon c 3 x_a <= 4\nobj min 1 x_a\n");
    }

    #[test]
    fn unknown_variable_is_rejected() {
        let mut ip = IntegerProgram::new();
        ip.add_constraint("c", vec![(3, 1)], Relation::Le, 0);
        assert!(solve_integer_program(&ip, &SearchLimits::default()).is_err());
    }

    #[test]
    fn budget_is_reported() {
        let mut ip = IntegerProgram::new();
        let vars: Vec<usize> = (0..8).map(|i| ip.add_variable(format!("x{i}"), 0, 8)).collect();
        ip.set_objective(Sense::Maximize, vars.iter().map(|&j| (j, 1)).collect());
        ip.add_constraint(
            "c",
            vars.iter().enumerate().map(|(i, &j)| (j, 2 * i as i64 + 3)).collect(),
            Relation::Le,
            97,
        );
        assert_eq!(solve_integer_program(&ip, &SearchLimits::nodes(5)), Err(Error::BudgetExceeded));
    }
}
