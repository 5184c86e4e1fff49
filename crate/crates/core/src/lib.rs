//! Exact computations for the Gelfand-Tsetlin-Zhelobenko construction of
//! o(2n-1)-highest vectors in o(2n+1)-modules, cross-checked against an
//! exact kernel solver and the Weyl dimension formula.

pub mod claimed;
pub mod cli;
pub mod kernel;
pub mod maps;
pub mod ops;
pub mod report;
pub mod ring;
pub mod systems;
pub mod tableaux;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Weight(#[from] systems::WeightError),
    #[error(transparent)]
    Kernel(#[from] kernel::KernelError),
    #[error(transparent)]
    Ops(#[from] ops::OpsError),
    #[error(transparent)]
    Tableau(#[from] tableaux::TableauError),
    #[error("at least one sign choice is required")]
    NoSign,
}
