//! Integer programming engine and the solvers built on it.

mod diversity;
mod integrity;
mod modular;
mod pieces;
mod program;

pub use diversity::{
    enumerate_connected_type_subgraphs, solve_neighbourhood_diversity, solve_neighbourhood_diversity_in,
};
pub use integrity::{solve_three_pvc, solve_three_pvc_in, solve_vertex_integrity, solve_vertex_integrity_in};
pub use modular::{modular_width, solve_modular_width, solve_modular_width_in};
pub use pieces::{build_piece_configurations, PieceConfiguration};

pub use program::{
    solve_integer_program, solve_integer_program_in, Constraint, IntegerProgram, Objective, ProgramOutcome, Relation,
    Sense, Variable,
};
