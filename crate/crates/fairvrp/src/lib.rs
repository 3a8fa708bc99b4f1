//! Exact branch-price-and-cut solver for the fair capacitated vehicle
//! routing problem in which the range (longest minus shortest route) is
//! minimized and every route must be a shortest tour over its customers.

pub mod bnb;
pub mod cuts;
pub mod instance;
pub mod lp;
pub mod master;
pub mod oracle;
pub mod pricing;
pub mod tsp;

pub use instance::{Budget, Instance, InstanceError, Rounding, Route};
pub use tsp::{PathQuery, TspOracle};
