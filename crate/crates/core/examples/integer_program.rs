//! The bounded integer program engine on a small knapsack-like model.

use ecp::ilp::{solve_integer_program, IntegerProgram, Relation, Sense};
use ecp::SearchLimits;

fn main() -> ecp::Result<()> {
    let mut ip = IntegerProgram::new();
    let weights = [3, 4, 5, 9];
    let values = [4, 5, 7, 12];
    let vars: Vec<usize> = (0..4).map(|i| ip.add_variable(format!("take {i}"), 0, 2)).collect();
    ip.add_constraint("weight", vars.iter().zip(weights).map(|(&v, w)| (v, w)).collect(), Relation::Le, 20);
    ip.add_constraint("pairs", vec![(vars[0], 1), (vars[1], 1)], Relation::Ge, 1);
    ip.set_objective(Sense::Maximize, vars.iter().zip(values).map(|(&v, c)| (v, c)).collect());
    print!("{}", ip.dump());
    let outcome = solve_integer_program(&ip, &SearchLimits::default())?;
    println!("{outcome:?}");
    Ok(())
}
